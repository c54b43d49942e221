#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetvariant/error.hpp"
#include "jetvariant/varid.hpp"

namespace jetvariant {

/// Shorthand naming scheme for jets that are pure derivatives in one
/// direction: Suffix style names them base<k> (y1, y2, ...), Underscore
/// style base_<k> (w_1, w_2, ...).
struct AliasSpec {
  enum class Style { Suffix, Underscore };
  std::string base;
  int dependent = 0;  // 0-based
  int direction = 0;  // 0-based
  Style style = Style::Suffix;
};

/// Declares the independent and dependent variables of one jet-space chart
/// and owns the naming of coordinates. Immutable after construction; all
/// queries are pure.
class JetContext {
 public:
  JetContext(std::vector<std::string> independents, std::vector<std::string> dependents,
             std::vector<AliasSpec> aliases = {})
      : indep_(std::move(independents)), dep_(std::move(dependents)), aliases_(std::move(aliases)) {
    if (indep_.empty() || indep_.size() > 4)
      fail(ErrorKind::SchemaError, "need between 1 and 4 independent variables");
    if (dep_.empty() || dep_.size() > 15)
      fail(ErrorKind::SchemaError, "need between 1 and 15 dependent variables");
    for (size_t i = 0; i < indep_.size(); ++i)
      for (size_t j = 0; j < indep_.size(); ++j)
        if (i != j && indep_[i] == indep_[j])
          fail(ErrorKind::SchemaError, "duplicate independent name '" + indep_[i] + "'");
    for (size_t i = 0; i < dep_.size(); ++i) {
      for (size_t j = 0; j < dep_.size(); ++j)
        if (i != j && dep_[i] == dep_[j])
          fail(ErrorKind::SchemaError, "duplicate dependent name '" + dep_[i] + "'");
      for (const auto& x : indep_)
        if (x == dep_[i])
          fail(ErrorKind::SchemaError, "name '" + x + "' used as both independent and dependent");
    }
    single_char_indeps_ = true;
    for (const auto& x : indep_) single_char_indeps_ &= x.size() == 1;
  }

  int n() const { return static_cast<int>(indep_.size()); }
  int m() const { return static_cast<int>(dep_.size()); }

  const std::vector<std::string>& independent_names() const { return indep_; }
  const std::vector<std::string>& dependent_names() const { return dep_; }
  const std::vector<AliasSpec>& aliases() const { return aliases_; }

  VarId independent(int i) const { return VarId::independent(i); }
  VarId jet(int dep, const MultiIndex& sigma) const { return VarId::jet(n(), m(), dep, sigma); }
  VarId dependent(int dep) const { return jet(dep, MultiIndex(n())); }
  VarId pure_jet(int dep, int direction, int order) const {
    MultiIndex s(n());
    s[direction] = order;
    return jet(dep, s);
  }

  /// Number of coordinates of exact jet order k (dimension of the fiber of
  /// the projection between consecutive jet spaces).
  long fiber_dimension(int k) const {
    if (k < 1) fail(ErrorKind::SchemaError, "fiber_dimension needs k >= 1");
    return static_cast<long>(m()) * static_cast<long>(binomial(n() + k - 1, k));
  }

  /// All coordinates of order <= max_order, ascending in the VarId order.
  /// Exhaustive and duplicate-free.
  std::vector<VarId> coordinates(int max_order) const {
    std::vector<VarId> out;
    for (int i = 0; i < n(); ++i) out.push_back(independent(i));
    for (int L = 0; L <= max_order; ++L)
      for (int j = 0; j < m(); ++j)
        for (const auto& s : multi_indices_of_order(n(), L)) out.push_back(jet(j, s));
    return out;
  }

  long coordinate_count(int max_order) const {
    return n() + m() * static_cast<long>(binomial(n() + max_order, max_order));
  }

  /// Inverse of rank_of for this context.
  VarId var_at_rank(size_t rank) const {
    if (rank < static_cast<size_t>(n())) return independent(static_cast<int>(rank));
    uint64_t r = rank - static_cast<size_t>(n());
    int L = 0;
    for (;; ++L) {
      uint64_t level = static_cast<uint64_t>(m()) * binomial(n() + L - 1, L);
      if (r < level) break;
      r -= level;
    }
    uint64_t per_dep = binomial(n() + L - 1, L);
    int dep = static_cast<int>(r / per_dep);
    uint64_t lex = r % per_dep;
    auto sigmas = multi_indices_of_order(n(), L);
    return jet(dep, sigmas[static_cast<size_t>(lex)]);
  }

  /// Preferred printable name: declared names for independents and plain
  /// dependents, alias shorthands where declared, single-letter subscript
  /// form (w_xy) where the chart allows it, canonical u<j>_<digits> otherwise.
  std::string name_of(VarId v) const {
    if (v.is_independent()) return indep_[static_cast<size_t>(v.indep_index())];
    int dep = v.dep_index();
    MultiIndex s = v.sigma();
    if (s.order() == 0) return dep_[static_cast<size_t>(dep)];
    for (const auto& a : aliases_) {
      if (a.dependent != dep) continue;
      if (s[a.direction] != s.order()) continue;  // pure derivative in alias direction
      if (a.style == AliasSpec::Style::Suffix) return a.base + std::to_string(s.order());
      return a.base + "_" + std::to_string(s.order());
    }
    if (single_char_indeps_) {
      std::string out = dep_[static_cast<size_t>(dep)] + "_";
      for (int i = 0; i < n(); ++i)
        for (int r = 0; r < s[i]; ++r) out += indep_[static_cast<size_t>(i)];
      return out;
    }
    return canonical_name(v);
  }

  /// Canonical jet name u<j>_<digits>, one digit per independent direction.
  std::string canonical_name(VarId v) const {
    MultiIndex s = v.sigma();
    std::string out = "u" + std::to_string(v.dep_index() + 1) + "_";
    for (int i = 0; i < n(); ++i) {
      if (s[i] > 9) fail(ErrorKind::SchemaError, "jet order too high for canonical digit naming");
      out += std::to_string(s[i]);
    }
    return out;
  }

  std::optional<VarId> resolve(const std::string& name) const {
    for (int i = 0; i < n(); ++i)
      if (indep_[static_cast<size_t>(i)] == name) return independent(i);
    for (int j = 0; j < m(); ++j)
      if (dep_[static_cast<size_t>(j)] == name) return dependent(j);
    if (auto v = resolve_canonical(name)) return v;
    if (auto v = resolve_letters(name)) return v;
    if (auto v = resolve_alias(name)) return v;
    return std::nullopt;
  }

 private:
  std::optional<VarId> resolve_canonical(const std::string& name) const {
    // u<j>_<digits>, exactly n digits
    if (name.size() < 2 || name[0] != 'u') return std::nullopt;
    size_t us = name.find('_');
    if (us == std::string::npos || us == 1) return std::nullopt;
    const std::string jpart = name.substr(1, us - 1);
    const std::string spart = name.substr(us + 1);
    if (spart.size() != static_cast<size_t>(n())) return std::nullopt;
    for (char c : jpart)
      if (c < '0' || c > '9') return std::nullopt;
    for (char c : spart)
      if (c < '0' || c > '9') return std::nullopt;
    int j = std::stoi(jpart);
    if (j < 1 || j > m()) return std::nullopt;
    MultiIndex s(n());
    for (int i = 0; i < n(); ++i) s[i] = spart[static_cast<size_t>(i)] - '0';
    return jet(j - 1, s);
  }

  std::optional<VarId> resolve_letters(const std::string& name) const {
    if (!single_char_indeps_) return std::nullopt;
    size_t us = name.find('_');
    if (us == std::string::npos || us + 1 >= name.size()) return std::nullopt;
    const std::string base = name.substr(0, us);
    int dep = -1;
    for (int j = 0; j < m(); ++j)
      if (dep_[static_cast<size_t>(j)] == base) dep = j;
    if (dep < 0) return std::nullopt;
    MultiIndex s(n());
    for (size_t p = us + 1; p < name.size(); ++p) {
      int dir = -1;
      for (int i = 0; i < n(); ++i)
        if (indep_[static_cast<size_t>(i)][0] == name[p]) dir = i;
      if (dir < 0) return std::nullopt;
      ++s[dir];
    }
    return jet(dep, s);
  }

  std::optional<VarId> resolve_alias(const std::string& name) const {
    for (const auto& a : aliases_) {
      std::string digits;
      if (a.style == AliasSpec::Style::Suffix) {
        if (name.size() <= a.base.size() || name.compare(0, a.base.size(), a.base) != 0) continue;
        digits = name.substr(a.base.size());
      } else {
        if (name.size() <= a.base.size() + 1 || name.compare(0, a.base.size(), a.base) != 0 ||
            name[a.base.size()] != '_')
          continue;
        digits = name.substr(a.base.size() + 1);
      }
      bool ok = !digits.empty();
      for (char c : digits) ok &= c >= '0' && c <= '9';
      if (!ok) continue;
      int k = std::stoi(digits);
      MultiIndex s(n());
      s[a.direction] = k;
      return jet(a.dependent, s);
    }
    return std::nullopt;
  }

  std::vector<std::string> indep_;
  std::vector<std::string> dep_;
  std::vector<AliasSpec> aliases_;
  bool single_char_indeps_ = false;
};

}  // namespace jetvariant
