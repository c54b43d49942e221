#pragma once

#include <gmp.h>

#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "jetvariant/error.hpp"

namespace jetvariant {

/// Exact rational number. Always stored in lowest terms with positive
/// denominator; zero is 0/1.
class Rational {
 public:
  Rational() { mpq_init(q_); }

  Rational(long n) {  // NOLINT: implicit by design, mirrors integer literals
    mpq_init(q_);
    mpq_set_si(q_, n, 1);
  }

  Rational(long num, long den) {
    mpq_init(q_);
    if (den == 0) fail(ErrorKind::DivisionByZero, "rational with zero denominator");
    mpq_set_si(q_, num, 1);
    mpq_t d;
    mpq_init(d);
    mpq_set_si(d, den, 1);
    mpq_div(q_, q_, d);
    mpq_clear(d);
  }

  Rational(const Rational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }

  Rational(Rational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }

  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(q_, o.q_);
    return *this;
  }

  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(q_, o.q_);
    return *this;
  }

  ~Rational() { mpq_clear(q_); }

  /// Parses "p" or "p/q" in base 10.
  static Rational from_string(const std::string& s) {
    Rational r;
    if (s.empty() || mpq_set_str(r.q_, s.c_str(), 10) != 0)
      fail(ErrorKind::SyntaxError, "bad rational literal '" + s + "'");
    if (mpz_sgn(mpq_denref(r.q_)) == 0)
      fail(ErrorKind::DivisionByZero, "rational with zero denominator");
    mpq_canonicalize(r.q_);
    return r;
  }

  bool is_zero() const { return mpq_sgn(q_) == 0; }
  bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
  bool is_integer() const { return mpz_cmp_si(mpq_denref(q_), 1) == 0; }
  int sign() const { return mpq_sgn(q_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  Rational& operator+=(const Rational& b) {
    mpq_add(q_, q_, b.q_);
    return *this;
  }
  Rational& operator-=(const Rational& b) {
    mpq_sub(q_, q_, b.q_);
    return *this;
  }
  Rational& operator*=(const Rational& b) {
    mpq_mul(q_, q_, b.q_);
    return *this;
  }
  Rational& operator/=(const Rational& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "division by zero");
    mpq_div(q_, q_, b.q_);
    return *this;
  }

  /// acc += a*b without a named temporary at every call site.
  void add_mul(const Rational& a, const Rational& b) {
    mpq_t t;
    mpq_init(t);
    mpq_mul(t, a.q_, b.q_);
    mpq_add(q_, q_, t);
    mpq_clear(t);
  }

  Rational abs() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
  }

  Rational inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of zero");
    Rational r;
    mpq_inv(r.q_, q_);
    return r;
  }

  Rational pow(long e) const {
    if (e == 0) return Rational(1);
    if (is_zero()) {
      if (e < 0) fail(ErrorKind::DivisionByZero, "negative power of zero");
      return Rational(0);
    }
    Rational base = e < 0 ? inverse() : *this;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r;
    mpz_pow_ui(mpq_numref(r.q_), mpq_numref(base.q_), k);
    mpz_pow_ui(mpq_denref(r.q_), mpq_denref(base.q_), k);
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) < 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) <= 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

  std::string to_string() const {
    char* s = mpq_get_str(nullptr, 10, q_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
  }

  /// Fits-in-long check and extraction, used by CLI/report plumbing.
  bool fits_long() const {
    return is_integer() && mpz_fits_slong_p(mpq_numref(q_)) != 0;
  }
  long to_long() const { return mpz_get_si(mpq_numref(q_)); }

  size_t hash() const {
    size_t h = static_cast<size_t>(mpz_get_ui(mpq_numref(q_))) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<size_t>(mpz_get_ui(mpq_denref(q_))) + (h << 6) + (h >> 2);
    h ^= static_cast<size_t>(mpq_sgn(q_) + 1) * 0xbf58476d1ce4e5b9ull;
    return h;
  }

  const mpq_t& raw() const { return q_; }
  mpq_t& raw() { return q_; }

 private:
  mpq_t q_;
};

/// gcd of |a| and |b| over the rationals' integer parts: gcd of numerators
/// over lcm of denominators. gcd(0, x) = |x|.
inline Rational rational_content_gcd(const Rational& a, const Rational& b) {
  if (a.is_zero()) return b.abs();
  if (b.is_zero()) return a.abs();
  Rational r;
  mpz_gcd(mpq_numref(r.raw()), mpq_numref(a.raw()), mpq_numref(b.raw()));
  mpz_lcm(mpq_denref(r.raw()), mpq_denref(a.raw()), mpq_denref(b.raw()));
  mpq_canonicalize(r.raw());
  return r;
}

}  // namespace jetvariant

template <>
struct std::hash<jetvariant::Rational> {
  size_t operator()(const jetvariant::Rational& r) const { return r.hash(); }
};
