#include "jetvariant/parser.hpp"

#include <cctype>

#include "jetvariant/error.hpp"

namespace jetvariant {

namespace {

class Parser {
 public:
  Parser(std::string_view src, const JetContext& ctx) : src_(src), ctx_(ctx) {}

  RatFun run() {
    RatFun e = expr();
    skip_ws();
    if (pos_ != src_.size())
      fail(ErrorKind::SyntaxError, "unexpected input at position " + std::to_string(pos_),
           static_cast<long>(pos_));
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ == src_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  char peek_raw(size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void syntax(const std::string& what) {
    fail(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_),
         static_cast<long>(pos_));
  }

  RatFun expr() {
    RatFun acc = term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  RatFun term() {
    RatFun acc = factor();
    for (;;) {
      if (eat('*'))
        acc *= factor();
      else if (peek() == '/') {
        ++pos_;
        acc = acc / factor();
      } else {
        return acc;
      }
    }
  }

  RatFun factor() {
    bool neg = false;
    if (eat('-')) neg = true;
    RatFun b = base();
    if (peek() == '^') {
      ++pos_;
      b = b.pow(exponent());
    }
    return neg ? -b : b;
  }

  int exponent() {
    skip_ws();
    bool neg = false;
    if (pos_ < src_.size() && src_[pos_] == '-') {
      neg = true;
      ++pos_;
    }
    if (pos_ == src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail(ErrorKind::NonIntegerExponent,
           "exponent must be an integer literal at position " + std::to_string(pos_),
           static_cast<long>(pos_));
    long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      if (v > 1000000) syntax("exponent too large");
      ++pos_;
    }
    return static_cast<int>(neg ? -v : v);
  }

  RatFun base() {
    skip_ws();
    if (pos_ == src_.size()) syntax("unexpected end of expression");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun e = expr();
      if (!eat(')')) syntax("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_literal();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    syntax(std::string("unexpected character '") + c + "'");
  }

  RatFun rational_literal() {
    std::string digits = read_digits();
    // Consume "/int" as part of the literal only when a digit follows;
    // otherwise leave '/' for the term level ("1/x").
    size_t save = pos_;
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '/' &&
        std::isdigit(static_cast<unsigned char>(peek_raw(1)))) {
      ++pos_;
      std::string den = read_digits();
      return RatFun::constant(Rational::from_string(digits + "/" + den));
    }
    pos_ = save;
    return RatFun::constant(Rational::from_string(digits));
  }

  std::string read_digits() {
    skip_ws();
    std::string out;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      out += src_[pos_];
      ++pos_;
    }
    if (out.empty()) syntax("expected digits");
    return out;
  }

  RatFun identifier() {
    size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    auto v = ctx_.resolve(name);
    if (!v)
      fail(ErrorKind::UnknownVariable,
           "unknown variable '" + name + "' at position " + std::to_string(start),
           static_cast<long>(start));
    return RatFun::variable(*v);
  }

  std::string_view src_;
  const JetContext& ctx_;
  size_t pos_ = 0;
};

std::string coeff_string(const Rational& c) { return c.to_string(); }

void append_term(std::string& out, const Term& t, const JetContext& ctx, bool first) {
  Rational mag = t.coeff.abs();
  bool negative = t.coeff.sign() < 0;
  if (first) {
    if (negative) out += "-";
  } else {
    out += negative ? " - " : " + ";
  }
  auto factors = t.mono.factors();
  if (factors.empty()) {
    out += coeff_string(mag);
    return;
  }
  bool printed = false;
  if (!mag.is_one()) {
    out += coeff_string(mag);
    printed = true;
  }
  for (auto [rank, e] : factors) {
    if (printed) out += "*";
    out += ctx.name_of(ctx.var_at_rank(rank));
    if (e != 1) out += "^" + std::to_string(e);
    printed = true;
  }
}

}  // namespace

RatFun parse_ratfun(std::string_view src, const JetContext& ctx) {
  return Parser(src, ctx).run();
}

std::string print_poly(const Poly& p, const JetContext& ctx) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    append_term(out, t, ctx, first);
    first = false;
  }
  return out;
}

std::string print_ratfun(const RatFun& f, const JetContext& ctx) {
  if (f.is_polynomial()) return print_poly(f.num(), ctx);
  return "(" + print_poly(f.num(), ctx) + ")/(" + print_poly(f.den(), ctx) + ")";
}

}  // namespace jetvariant
