#pragma once

#include "jetvariant/context.hpp"
#include "jetvariant/ratfun.hpp"

namespace jetvariant {

/// Total derivative D_i = d/dx^i + sum_{j,sigma} u^j_{sigma+1_i} d/du^j_sigma.
/// Raises the maximal jet order by at most one.
Poly total_derivative(const Poly& p, int dir, const JetContext& ctx);
RatFun total_derivative(const RatFun& f, int dir, const JetContext& ctx);

/// Composition D_1^{s_1} ... D_n^{s_n}; the D_i commute, so the composition
/// order is immaterial.
RatFun total_derivative_multi(const RatFun& f, const MultiIndex& sigma, const JetContext& ctx);

/// Components of the horizontal differential: component i is D_i(f).
struct HorizontalCovector {
  std::vector<RatFun> components;
};

HorizontalCovector horizontal_differential(const RatFun& f, const JetContext& ctx);

}  // namespace jetvariant
