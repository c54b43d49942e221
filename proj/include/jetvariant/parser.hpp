#pragma once

#include <string>
#include <string_view>

#include "jetvariant/context.hpp"
#include "jetvariant/ratfun.hpp"

namespace jetvariant {

/// Parses the expression grammar:
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := ("-")? base ("^" int)?
///   base   := rational | ident | "(" expr ")"
///   rational := int ("/" int)?
/// Precedence ^ > unary - > * / > + -. Exponents are integer literals only.
/// Errors: SyntaxError (with byte position), UnknownVariable,
/// NonIntegerExponent.
RatFun parse_ratfun(std::string_view src, const JetContext& ctx);

/// Canonical deterministic rendering: terms in descending graded-lex order,
/// explicit denominator as "(num)/(den)". parse(print(f)) reconstructs f
/// exactly.
std::string print_poly(const Poly& p, const JetContext& ctx);
std::string print_ratfun(const RatFun& f, const JetContext& ctx);

}  // namespace jetvariant
