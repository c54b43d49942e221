#pragma once

#include <map>
#include <unordered_map>

#include "jetvariant/poly.hpp"

namespace jetvariant {

/// Exact multivariate rational function num/den. Invariants: den is nonzero
/// with positive leading coefficient and integer content 1; num and den share
/// no monomial factor; zero is 0/1. Full multivariate gcd reduction is not
/// performed; equality is decided by cross-multiplied expansion (equals()).
class RatFun {
 public:
  RatFun() : num_(), den_(Poly::one()) {}
  explicit RatFun(Poly p) : num_(std::move(p)), den_(Poly::one()) { normalize(); }
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFun constant(const Rational& c) { return RatFun(Poly::constant(c)); }
  static RatFun variable(VarId v) { return RatFun(Poly::variable(v)); }
  static RatFun zero() { return RatFun(); }
  static RatFun one() { return RatFun(Poly::one()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }

  /// Value of a constant RatFun.
  Rational constant_value() const;

  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);  // DivisionByZero
  RatFun operator-() const;
  RatFun& operator+=(const RatFun& b);
  RatFun& operator-=(const RatFun& b);
  RatFun& operator*=(const RatFun& b);

  RatFun times_coeff(const Rational& c) const;

  /// Integer exponents only; e < 0 requires a nonzero base.
  RatFun pow(int e) const;

  /// Complete deterministic equality: cross-multiplied expansion is zero.
  bool equals(const RatFun& o) const;

  /// Structural identity of the normalized representation.
  bool operator==(const RatFun&) const = default;

  RatFun partial(VarId v) const;

  /// Exact value; DenominatorVanishes when den evaluates to 0,
  /// UnboundVariable when the point misses a coordinate of the support.
  Rational evaluate(const std::map<VarId, Rational>& point) const;

  /// Replaces each mapped coordinate by the given rational function.
  /// DivisionByZero if the substituted denominator collapses to zero.
  RatFun substitute(const std::map<VarId, RatFun>& map) const;

  std::vector<VarId> support_vars(const JetContext& ctx) const;
  int max_jet_order(const JetContext& ctx) const;

 private:
  void normalize();
  Poly num_;
  Poly den_;
};

RatFun substitute_poly(const Poly& p, const std::map<VarId, RatFun>& map);

}  // namespace jetvariant
