#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <string>

#include "jetvariant/multiindex.hpp"

namespace jetvariant {

inline uint64_t binomial(int a, int b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  uint64_t r = 1;
  for (int i = 1; i <= b; ++i) r = r * static_cast<uint64_t>(a - b + i) / static_cast<uint64_t>(i);
  return r;
}

/// Identifier of one coordinate on a jet space: either an independent
/// variable x^i or a jet coordinate u^j_sigma (sigma = 0 is the dependent
/// variable itself). The packed 64-bit code realizes the documented total
/// order directly: independents first by index, then jets by
/// (|sigma|, j, lexicographic sigma). Packing is bijective, so no intern
/// table is needed and values are context-free immutable.
///
/// Limits: n <= 4 independents, m <= 15 dependents, |sigma| <= 255,
/// per-direction entries <= 255.
class VarId {
 public:
  VarId() : code_(0) {}

  static VarId independent(int index) {
    return VarId(static_cast<uint64_t>(index) + 1);
  }

  static VarId jet(int n, int m, int dep, const MultiIndex& sigma) {
    assert(n >= 1 && n <= 4);
    assert(m >= 1 && m <= 15);
    assert(sigma.size() == n);
    uint64_t code = (1ull << 63);
    code |= static_cast<uint64_t>(m) << 52;
    code |= static_cast<uint64_t>(n) << 48;
    code |= static_cast<uint64_t>(sigma.order()) << 40;
    code |= static_cast<uint64_t>(dep) << 32;
    for (int i = 0; i < n; ++i) {
      assert(sigma[i] >= 0 && sigma[i] <= 255);
      code |= static_cast<uint64_t>(sigma[i]) << (24 - 8 * i);
    }
    return VarId(code);
  }

  bool valid() const { return code_ != 0; }
  bool is_independent() const { return code_ != 0 && (code_ >> 63) == 0; }
  bool is_jet() const { return (code_ >> 63) != 0; }

  int indep_index() const { return static_cast<int>(code_ - 1); }
  int dep_index() const { return static_cast<int>((code_ >> 32) & 0xff); }
  int jet_n() const { return static_cast<int>((code_ >> 48) & 0xf); }
  int jet_m() const { return static_cast<int>((code_ >> 52) & 0xf); }

  /// Jet order |sigma|; independents have order 0.
  int order() const { return is_jet() ? static_cast<int>((code_ >> 40) & 0xff) : 0; }

  MultiIndex sigma() const {
    int n = jet_n();
    MultiIndex s(n);
    for (int i = 0; i < n; ++i)
      s[i] = static_cast<int>((code_ >> (24 - 8 * i)) & 0xff);
    return s;
  }

  uint64_t code() const { return code_; }

  bool operator==(const VarId&) const = default;
  auto operator<=>(const VarId&) const = default;

  /// Context-free debug name; the printable name lives in JetContext.
  std::string debug_name() const {
    if (!valid()) return "<invalid>";
    if (is_independent()) return "x" + std::to_string(indep_index() + 1);
    std::string s = "u" + std::to_string(dep_index() + 1) + "_";
    MultiIndex sg = sigma();
    for (int i = 0; i < sg.size(); ++i) s += std::to_string(sg[i]);
    return s;
  }

 private:
  explicit VarId(uint64_t code) : code_(code) {}
  uint64_t code_;
};

/// Position of sigma in the ascending lexicographic enumeration of
/// multi-indices of the same order.
inline uint64_t lex_rank(const MultiIndex& sigma) {
  int n = sigma.size();
  uint64_t rank = 0;
  int rem = sigma.order();
  for (int p = 0; p < n - 1; ++p) {
    for (int t = 0; t < sigma[p]; ++t) {
      // compositions of (rem - t) into the n-p-1 remaining slots
      rank += binomial(rem - t + n - p - 2, n - p - 2);
    }
    rem -= sigma[p];
  }
  return rank;
}

/// Dense, stable position of a coordinate in the documented total order.
/// Independents occupy ranks 0..n-1; jets follow grouped by (order, dep, lex).
/// Stable under extending the enumeration to higher orders.
inline size_t rank_of(VarId v) {
  if (v.is_independent()) return static_cast<size_t>(v.indep_index());
  int n = v.jet_n(), m = v.jet_m(), L = v.order();
  // coordinates of order < L: m * C(n+L-1, L-1)
  uint64_t below = static_cast<uint64_t>(m) * binomial(n + L - 1, L - 1);
  uint64_t level_size = binomial(n + L - 1, L);
  return static_cast<size_t>(n) + below +
         static_cast<size_t>(v.dep_index()) * level_size + lex_rank(v.sigma());
}

struct VarIdHash {
  size_t operator()(const VarId& v) const { return std::hash<uint64_t>{}(v.code()); }
};

}  // namespace jetvariant
