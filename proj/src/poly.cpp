#include "jetvariant/poly.hpp"

#include <algorithm>

#include "jetvariant/error.hpp"

namespace jetvariant {

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

void Monomial::set_exp(size_t rank, int e) {
  if (e < 0 || e > 0xffff) fail(ErrorKind::SchemaError, "monomial exponent out of range");
  int old = exp_at(rank);
  if (e == old) return;
  if (rank >= exps_.size()) exps_.resize(rank + 1, 0);
  exps_[rank] = static_cast<uint16_t>(e);
  degree_ += e - old;
  trim();
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial r;
  r.exps_.resize(std::max(exps_.size(), o.exps_.size()), 0);
  for (size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i];
  for (size_t i = 0; i < o.exps_.size(); ++i) {
    unsigned v = static_cast<unsigned>(r.exps_[i]) + o.exps_[i];
    if (v > 0xffff) fail(ErrorKind::SchemaError, "monomial exponent overflow");
    r.exps_[i] = static_cast<uint16_t>(v);
  }
  r.degree_ = degree_ + o.degree_;
  return r;
}

std::optional<Monomial> Monomial::divided_by(const Monomial& o) const {
  if (o.exps_.size() > exps_.size()) return std::nullopt;
  Monomial r;
  r.exps_ = exps_;
  for (size_t i = 0; i < o.exps_.size(); ++i) {
    if (r.exps_[i] < o.exps_[i]) return std::nullopt;
    r.exps_[i] = static_cast<uint16_t>(r.exps_[i] - o.exps_[i]);
  }
  r.degree_ = degree_ - o.degree_;
  r.trim();
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  size_t w = std::min(a.exps_.size(), b.exps_.size());
  r.exps_.resize(w, 0);
  int deg = 0;
  for (size_t i = 0; i < w; ++i) {
    r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    deg += r.exps_[i];
  }
  r.degree_ = deg;
  r.trim();
  return r;
}

Monomial Monomial::pow(int e) const {
  Monomial r;
  if (e == 0) return r;
  r.exps_.resize(exps_.size());
  for (size_t i = 0; i < exps_.size(); ++i) {
    long v = static_cast<long>(exps_[i]) * e;
    if (v > 0xffff) fail(ErrorKind::SchemaError, "monomial exponent overflow");
    r.exps_[i] = static_cast<uint16_t>(v);
  }
  r.degree_ = degree_ * e;
  return r;
}

int Monomial::compare(const Monomial& a, const Monomial& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_ ? -1 : 1;
  size_t w = std::max(a.exps_.size(), b.exps_.size());
  for (size_t i = 0; i < w; ++i) {
    int ea = a.exp_at(i), eb = b.exp_at(i);
    if (ea != eb) return ea < eb ? -1 : 1;
  }
  return 0;
}

size_t Monomial::hash() const {
  size_t h = 0xcbf29ce484222325ull;
  for (uint16_t e : exps_) {
    h ^= e;
    h *= 0x100000001b3ull;
  }
  h ^= static_cast<size_t>(degree_) << 1;
  return h;
}

std::vector<std::pair<size_t, int>> Monomial::factors() const {
  std::vector<std::pair<size_t, int>> out;
  for (size_t i = 0; i < exps_.size(); ++i)
    if (exps_[i] != 0) out.emplace_back(i, static_cast<int>(exps_[i]));
  return out;
}

namespace {

bool term_greater(const Term& a, const Term& b) {
  return Monomial::compare(a.mono, b.mono) > 0;
}

}  // namespace

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.terms_.push_back({Monomial(), c});
  return p;
}

Poly Poly::variable(VarId v) {
  Poly p;
  p.terms_.push_back({Monomial::variable(rank_of(v)), Rational(1)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    if (!p.terms_.empty() && Monomial::compare(p.terms_.back().mono, t.mono) == 0) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_[0].mono.is_one() && terms_[0].coeff.is_one();
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    int c = Monomial::compare(a.terms_[i].mono, b.terms_[j].mono);
    if (c > 0) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      Rational s = a.terms_[i].coeff + b.terms_[j].coeff;
      if (!s.is_zero()) r.terms_.push_back({a.terms_[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
  for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
  return r;
}

Poly& Poly::operator+=(const Poly& b) {
  *this = *this + b;
  return *this;
}

Poly& Poly::operator-=(const Poly& b) {
  *this = *this - b;
  return *this;
}

Poly Poly::operator-() const {
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.terms_.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coeff);

  size_t products = a.terms_.size() * b.terms_.size();
  if (products <= 4096) {
    std::vector<Term> buf;
    buf.reserve(products);
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_)
        buf.push_back({ta.mono.times(tb.mono), ta.coeff * tb.coeff});
    return Poly::from_terms(std::move(buf));
  }

  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(products / 4);
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Monomial m = ta.mono.times(tb.mono);
      auto it = acc.find(m);
      if (it == acc.end())
        acc.emplace(std::move(m), ta.coeff * tb.coeff);
      else
        it->second.add_mul(ta.coeff, tb.coeff);
    }
  }
  std::vector<Term> buf;
  buf.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) buf.push_back({m, std::move(c)});
  std::sort(buf.begin(), buf.end(), term_greater);
  Poly r;
  r.terms_ = std::move(buf);
  return r;
}

Poly Poly::times_coeff(const Rational& c) const {
  if (c.is_zero()) return Poly();
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono, t.coeff * c});
  return r;
}

Poly Poly::times_monomial(const Monomial& m, const Rational& c) const {
  if (c.is_zero()) return Poly();
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono.times(m), t.coeff * c});
  return r;
}

Poly Poly::pow(int e) const {
  if (e < 0) fail(ErrorKind::SchemaError, "Poly::pow needs e >= 0");
  Poly r = Poly::one();
  Poly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return r;
}

Rational Poly::content() const {
  Rational g(0);
  for (const auto& t : terms_) {
    g = rational_content_gcd(g, t.coeff);
    if (g.is_one()) break;
  }
  return g;
}

Monomial Poly::monomial_gcd() const {
  if (terms_.empty()) return Monomial();
  Monomial g = terms_[0].mono;
  for (size_t i = 1; i < terms_.size() && !g.is_one(); ++i)
    g = Monomial::gcd(g, terms_[i].mono);
  return g;
}

Poly Poly::divided_by_monomial(const Monomial& m) const {
  Poly r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    auto q = t.mono.divided_by(m);
    if (!q) fail(ErrorKind::SchemaError, "monomial does not divide polynomial");
    r.terms_.push_back({std::move(*q), t.coeff});
  }
  return r;
}

std::vector<size_t> Poly::support() const {
  std::vector<char> seen;
  for (const auto& t : terms_) {
    if (t.mono.width() > seen.size()) seen.resize(t.mono.width(), 0);
    for (size_t i = 0; i < t.mono.width(); ++i)
      if (t.mono.exp_at(i) > 0) seen[i] = 1;
  }
  std::vector<size_t> out;
  for (size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

int Poly::max_jet_order(const JetContext& ctx) const {
  int best = 0;
  for (size_t r : support()) best = std::max(best, ctx.var_at_rank(r).order());
  return best;
}

std::optional<Poly> try_divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Poly();
  if (b.is_one()) return a;
  if (a.total_degree() < b.total_degree()) return std::nullopt;

  std::vector<Term> quotient;
  Poly rem = a;
  const Term& blead = b.leading();
  while (!rem.is_zero()) {
    auto qm = rem.leading().mono.divided_by(blead.mono);
    if (!qm) return std::nullopt;
    Rational qc = rem.leading().coeff / blead.coeff;
    quotient.push_back({*qm, qc});
    rem = rem - b.times_monomial(*qm, qc);
  }
  return Poly::from_terms(std::move(quotient));
}

Poly poly_partial(const Poly& p, VarId v) {
  size_t rank = rank_of(v);
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    int e = t.mono.exp_at(rank);
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set_exp(rank, e - 1);
    out.push_back({std::move(m), t.coeff * Rational(e)});
  }
  return Poly::from_terms(std::move(out));
}

Rational poly_evaluate(const Poly& p, const std::unordered_map<size_t, Rational>& point) {
  Rational acc(0);
  for (const auto& t : p.terms()) {
    Rational v = t.coeff;
    for (auto [rank, e] : t.mono.factors()) {
      auto it = point.find(rank);
      if (it == point.end())
        fail(ErrorKind::UnboundVariable, "no value for coordinate rank " + std::to_string(rank));
      v *= it->second.pow(e);
    }
    acc += v;
  }
  return acc;
}

}  // namespace jetvariant
