#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "jetvariant/context.hpp"
#include "jetvariant/rational.hpp"
#include "jetvariant/varid.hpp"

namespace jetvariant {

/// Exponent vector keyed by coordinate rank (see rank_of), trailing zeros
/// trimmed. Ranks are stable under enlarging the jet order, so monomials are
/// context-compatible as long as they come from one chart.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(size_t rank, int exp = 1) {
    Monomial m;
    m.set_exp(rank, exp);
    return m;
  }

  bool is_one() const { return exps_.empty(); }
  int degree() const { return degree_; }

  int exp_at(size_t rank) const {
    return rank < exps_.size() ? static_cast<int>(exps_[rank]) : 0;
  }

  void set_exp(size_t rank, int e);

  size_t width() const { return exps_.size(); }

  Monomial times(const Monomial& o) const;
  std::optional<Monomial> divided_by(const Monomial& o) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);
  Monomial pow(int e) const;

  /// Graded lexicographic order over the VarId order: lower total degree is
  /// smaller; on ties the monomial with the larger exponent at the earliest
  /// rank is larger. Returns <0, 0, >0.
  static int compare(const Monomial& a, const Monomial& b);

  bool operator==(const Monomial&) const = default;
  size_t hash() const;

  /// (rank, exponent) pairs in ascending rank order.
  std::vector<std::pair<size_t, int>> factors() const;

 private:
  void trim();
  std::vector<uint16_t> exps_;
  int degree_ = 0;
};

struct MonomialHash {
  size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial mono;
  Rational coeff;
  bool operator==(const Term&) const = default;
};

/// Sparse multivariate polynomial with exact rational coefficients. Terms are
/// kept in strictly descending graded-lex order with no zero coefficients.
class Poly {
 public:
  Poly() = default;

  static Poly zero() { return Poly(); }
  static Poly one() { return constant(Rational(1)); }
  static Poly constant(const Rational& c);
  static Poly variable(VarId v);
  static Poly from_terms(std::vector<Term> terms);  // normalizes

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  int total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly& operator+=(const Poly& b);
  Poly& operator-=(const Poly& b);

  Poly times_coeff(const Rational& c) const;
  Poly times_monomial(const Monomial& m, const Rational& c) const;
  Poly pow(int e) const;  // e >= 0

  /// Positive gcd of all coefficients (content); 0 for the zero polynomial.
  Rational content() const;
  int leading_sign() const { return terms_.empty() ? 0 : terms_.front().coeff.sign(); }

  /// Componentwise-min exponent vector across all terms.
  Monomial monomial_gcd() const;

  /// Exact division by a monomial that divides every term.
  Poly divided_by_monomial(const Monomial& m) const;

  bool operator==(const Poly&) const = default;

  /// Ranks of all coordinates appearing with nonzero exponent, ascending.
  std::vector<size_t> support() const;

  /// Largest jet order among coordinates appearing in the polynomial.
  int max_jet_order(const JetContext& ctx) const;

 private:
  std::vector<Term> terms_;
};

/// Attempts exact multivariate division a / b; nullopt when b does not divide
/// a. Cheap on failure (the leading-term test usually rejects immediately).
std::optional<Poly> try_divide_exact(const Poly& a, const Poly& b);

/// d/dv as formal partial derivative.
Poly poly_partial(const Poly& p, VarId v);

/// Exact value at a point assigning every rank in p's support.
/// point is keyed by rank; missing entries raise UnboundVariable.
Rational poly_evaluate(const Poly& p, const std::unordered_map<size_t, Rational>& point);

}  // namespace jetvariant
