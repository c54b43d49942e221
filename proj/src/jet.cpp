#include "jetvariant/jet.hpp"

namespace jetvariant {

Poly total_derivative(const Poly& p, int dir, const JetContext& ctx) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    for (auto [rank, e] : t.mono.factors()) {
      VarId v = ctx.var_at_rank(rank);
      VarId dv;  // D_dir applied to the coordinate v
      if (v.is_independent()) {
        if (v.indep_index() != dir) continue;
        dv = VarId();  // derivative is the constant 1
      } else {
        dv = ctx.jet(v.dep_index(), v.sigma().bumped(dir));
      }
      Monomial m = t.mono;
      m.set_exp(rank, e - 1);
      if (dv.valid()) m = m.times(Monomial::variable(rank_of(dv)));
      out.push_back({std::move(m), t.coeff * Rational(e)});
    }
  }
  return Poly::from_terms(std::move(out));
}

RatFun total_derivative(const RatFun& f, int dir, const JetContext& ctx) {
  Poly dn = total_derivative(f.num(), dir, ctx);
  if (f.is_polynomial()) return RatFun(std::move(dn));
  Poly dd = total_derivative(f.den(), dir, ctx);
  if (dd.is_zero()) return RatFun(std::move(dn), f.den());
  return RatFun(dn * f.den() - f.num() * dd, f.den() * f.den());
}

RatFun total_derivative_multi(const RatFun& f, const MultiIndex& sigma, const JetContext& ctx) {
  RatFun acc = f;
  for (int i = 0; i < sigma.size(); ++i)
    for (int r = 0; r < sigma[i]; ++r) acc = total_derivative(acc, i, ctx);
  return acc;
}

HorizontalCovector horizontal_differential(const RatFun& f, const JetContext& ctx) {
  HorizontalCovector out;
  out.components.reserve(static_cast<size_t>(ctx.n()));
  for (int i = 0; i < ctx.n(); ++i) out.components.push_back(total_derivative(f, i, ctx));
  return out;
}

}  // namespace jetvariant
