#include "jetvariant/ratfun.hpp"

#include <algorithm>

#include "jetvariant/error.hpp"

namespace jetvariant {

void RatFun::normalize() {
  if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "zero denominator polynomial");
  if (num_.is_zero()) {
    den_ = Poly::one();
    return;
  }
  Monomial g = Monomial::gcd(num_.monomial_gcd(), den_.monomial_gcd());
  if (!g.is_one()) {
    num_ = num_.divided_by_monomial(g);
    den_ = den_.divided_by_monomial(g);
  }
  if (!den_.is_one()) {
    if (auto q = try_divide_exact(num_, den_)) {
      num_ = std::move(*q);
      den_ = Poly::one();
      return;
    }
  }
  Rational c = den_.content();
  if (den_.leading_sign() < 0) c = -c;
  if (!c.is_one()) {
    Rational inv = c.inverse();
    num_ = num_.times_coeff(inv);
    den_ = den_.times_coeff(inv);
  }
}

Rational RatFun::constant_value() const {
  if (!is_constant()) fail(ErrorKind::SchemaError, "not a constant expression");
  return num_.is_zero() ? Rational(0) : num_.terms()[0].coeff;
}

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
  if (!a.den_.is_one() && !b.den_.is_one()) {
    if (auto q = try_divide_exact(a.den_, b.den_))
      return RatFun(a.num_ + b.num_ * *q, a.den_);
    if (auto q = try_divide_exact(b.den_, a.den_))
      return RatFun(a.num_ * *q + b.num_, b.den_);
  }
  return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun RatFun::operator-() const {
  RatFun r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun();
  Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bd.is_one())
    if (auto q = try_divide_exact(an, bd)) {
      an = std::move(*q);
      bd = Poly::one();
    }
  if (!ad.is_one())
    if (auto q = try_divide_exact(bn, ad)) {
      bn = std::move(*q);
      ad = Poly::one();
    }
  return RatFun(an * bn, ad * bd);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero rational function");
  if (a.is_zero()) return RatFun();
  Poly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
  if (!bn.is_one())
    if (auto q = try_divide_exact(an, bn)) {
      an = std::move(*q);
      bn = Poly::one();
    }
  if (!ad.is_one())
    if (auto q = try_divide_exact(bd, ad)) {
      bd = std::move(*q);
      ad = Poly::one();
    }
  return RatFun(an * bd, ad * bn);
}

RatFun& RatFun::operator+=(const RatFun& b) {
  *this = *this + b;
  return *this;
}
RatFun& RatFun::operator-=(const RatFun& b) {
  *this = *this - b;
  return *this;
}
RatFun& RatFun::operator*=(const RatFun& b) {
  *this = *this * b;
  return *this;
}

RatFun RatFun::times_coeff(const Rational& c) const {
  if (c.is_zero()) return RatFun();
  RatFun r;
  r.num_ = num_.times_coeff(c);
  r.den_ = den_;
  return r;
}

RatFun RatFun::pow(int e) const {
  if (e == 0) return RatFun::one();
  if (is_zero()) {
    if (e < 0) fail(ErrorKind::DivisionByZero, "negative power of zero");
    return RatFun();
  }
  if (e > 0) return RatFun(num_.pow(e), den_.pow(e));
  return RatFun(den_.pow(-e), num_.pow(-e));
}

bool RatFun::equals(const RatFun& o) const {
  if (num_ == o.num_ && den_ == o.den_) return true;
  return (num_ * o.den_ - o.num_ * den_).is_zero();
}

RatFun RatFun::partial(VarId v) const {
  if (den_.is_one()) return RatFun(poly_partial(num_, v));
  Poly dn = poly_partial(num_, v);
  Poly dd = poly_partial(den_, v);
  if (dd.is_zero()) return RatFun(std::move(dn), den_);
  return RatFun(dn * den_ - num_ * dd, den_ * den_);
}

Rational RatFun::evaluate(const std::map<VarId, Rational>& point) const {
  std::unordered_map<size_t, Rational> by_rank;
  by_rank.reserve(point.size());
  for (const auto& [v, x] : point) by_rank.emplace(rank_of(v), x);
  Rational d = poly_evaluate(den_, by_rank);
  if (d.is_zero()) fail(ErrorKind::DenominatorVanishes, "denominator vanishes at sample point");
  return poly_evaluate(num_, by_rank) / d;
}

RatFun substitute_poly(const Poly& p, const std::map<VarId, RatFun>& map) {
  if (map.empty()) return RatFun(p);
  std::unordered_map<size_t, const RatFun*> by_rank;
  by_rank.reserve(map.size());
  for (const auto& [v, f] : map) by_rank.emplace(rank_of(v), &f);

  // Per-variable power cache to avoid recomputing f^e across terms.
  std::unordered_map<size_t, std::vector<RatFun>> powers;
  auto power_of = [&](size_t rank, int e) -> const RatFun& {
    auto& vec = powers[rank];
    if (vec.empty()) vec.push_back(RatFun::one());
    while (static_cast<int>(vec.size()) <= e) vec.push_back(vec.back() * *by_rank.at(rank));
    return vec[static_cast<size_t>(e)];
  };

  RatFun acc;
  for (const auto& t : p.terms()) {
    Monomial residual;
    RatFun factor = RatFun::one();
    bool touched = false;
    for (auto [rank, e] : t.mono.factors()) {
      if (by_rank.count(rank)) {
        factor *= power_of(rank, e);
        touched = true;
      } else {
        residual.set_exp(rank, e);
      }
    }
    Poly base = Poly::from_terms({{residual, t.coeff}});
    if (!touched) {
      acc += RatFun(std::move(base));
    } else {
      acc += RatFun(std::move(base)) * factor;
    }
  }
  return acc;
}

RatFun RatFun::substitute(const std::map<VarId, RatFun>& map) const {
  RatFun n = substitute_poly(num_, map);
  RatFun d = substitute_poly(den_, map);
  if (d.is_zero()) fail(ErrorKind::DivisionByZero, "denominator collapses under substitution");
  return n / d;
}

std::vector<VarId> RatFun::support_vars(const JetContext& ctx) const {
  std::vector<size_t> ranks = num_.support();
  for (size_t r : den_.support()) ranks.push_back(r);
  std::sort(ranks.begin(), ranks.end());
  ranks.erase(std::unique(ranks.begin(), ranks.end()), ranks.end());
  std::vector<VarId> out;
  out.reserve(ranks.size());
  for (size_t r : ranks) out.push_back(ctx.var_at_rank(r));
  return out;
}

int RatFun::max_jet_order(const JetContext& ctx) const {
  return std::max(num_.max_jet_order(ctx), den_.max_jet_order(ctx));
}

}  // namespace jetvariant
