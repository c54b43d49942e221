#include "jetvariant/prolong.hpp"

#include "jetvariant/error.hpp"
#include "jetvariant/linalg.hpp"

namespace jetvariant {

void PointVectorField::validate(const JetContext& ctx) const {
  if (alpha.size() != static_cast<size_t>(ctx.n()) || beta.size() != static_cast<size_t>(ctx.m()))
    fail(ErrorKind::SchemaError, "field '" + name + "' has wrong component count");
  for (const auto& c : alpha)
    if (c.max_jet_order(ctx) >= 1)
      fail(ErrorKind::SchemaError, "field '" + name + "' has jet variables in alpha");
  for (const auto& c : beta)
    if (c.max_jet_order(ctx) >= 1)
      fail(ErrorKind::SchemaError, "field '" + name + "' has jet variables in beta");
}

GeneratingSection generating_function(const PointVectorField& X, const JetContext& ctx) {
  X.validate(ctx);
  GeneratingSection out;
  out.phi.reserve(static_cast<size_t>(ctx.m()));
  for (int j = 0; j < ctx.m(); ++j) {
    RatFun phi = X.beta[static_cast<size_t>(j)];
    for (int i = 0; i < ctx.n(); ++i) {
      VarId uj1 = ctx.jet(j, MultiIndex::unit(ctx.n(), i));
      phi -= RatFun::variable(uj1) * X.alpha[static_cast<size_t>(i)];
    }
    out.phi.push_back(std::move(phi));
  }
  return out;
}

const RatFun& ProlongedVectorField::jet_coefficient(VarId v) const {
  auto it = jets_.find(v);
  if (it == jets_.end())
    fail(ErrorKind::OrderMismatch, "no prolonged coefficient for " + v.debug_name());
  return it->second;
}

const RatFun& ProlongedVectorField::coefficient(VarId v) const {
  if (v.is_independent()) return base_coefficient(v.indep_index());
  return jet_coefficient(v);
}

ProlongedVectorField prolong_field(const PointVectorField& X, int k, const JetContext& ctx) {
  X.validate(ctx);
  ProlongedVectorField out;
  out.name_ = X.name;
  out.order_ = k;
  out.base_ = X.alpha;

  std::vector<RatFun> dalpha;  // D_i(alpha^s), flattened [i][s]
  dalpha.reserve(static_cast<size_t>(ctx.n() * ctx.n()));
  for (int i = 0; i < ctx.n(); ++i)
    for (int s = 0; s < ctx.n(); ++s)
      dalpha.push_back(total_derivative(X.alpha[static_cast<size_t>(s)], i, ctx));

  for (int j = 0; j < ctx.m(); ++j)
    out.jets_[ctx.jet(j, MultiIndex(ctx.n()))] = X.beta[static_cast<size_t>(j)];

  for (int L = 1; L <= k; ++L) {
    for (int j = 0; j < ctx.m(); ++j) {
      for (const auto& sigma : multi_indices_of_order(ctx.n(), L)) {
        int dir = 0;
        while (sigma[dir] == 0) ++dir;
        MultiIndex tau = sigma.lowered(dir);
        RatFun eta = total_derivative(out.jets_.at(ctx.jet(j, tau)), dir, ctx);
        for (int s = 0; s < ctx.n(); ++s) {
          const RatFun& da = dalpha[static_cast<size_t>(dir * ctx.n() + s)];
          if (da.is_zero()) continue;
          eta -= RatFun::variable(ctx.jet(j, tau.bumped(s))) * da;
        }
        out.jets_[ctx.jet(j, sigma)] = std::move(eta);
      }
    }
  }
  return out;
}

RatFun lie_derivative(const ProlongedVectorField& X, const RatFun& f, const JetContext& ctx) {
  if (f.max_jet_order(ctx) > X.order())
    fail(ErrorKind::OrderMismatch, "expression order exceeds prolongation order of " + X.name());

  auto lie_poly = [&](const Poly& p) -> RatFun {
    RatFun acc;
    for (size_t r : p.support()) {
      VarId v = ctx.var_at_rank(r);
      const RatFun& c = X.coefficient(v);
      if (c.is_zero()) continue;
      acc += c * RatFun(poly_partial(p, v));
    }
    return acc;
  };

  RatFun ln = lie_poly(f.num());
  if (f.is_polynomial()) return ln;
  RatFun ld = lie_poly(f.den());
  RatFun den(f.den());
  return (ln * den - RatFun(f.num()) * ld) / (den * den);
}

RatFun PointMap::pullback(const RatFun& f, const JetContext& ctx) const {
  std::map<VarId, RatFun> sub = images;
  for (int i = 0; i < ctx.n(); ++i) sub[ctx.independent(i)] = x_new[static_cast<size_t>(i)];
  return f.substitute(sub);
}

PointMap prolong_point_map(const std::vector<RatFun>& x_new, const std::vector<RatFun>& u_new,
                           int k, const JetContext& ctx) {
  int n = ctx.n(), m = ctx.m();
  if (x_new.size() != static_cast<size_t>(n) || u_new.size() != static_cast<size_t>(m))
    fail(ErrorKind::SchemaError, "point map has wrong component count");

  PointMap out;
  out.x_new = x_new;
  out.u_new = u_new;
  out.order = k;
  for (int j = 0; j < m; ++j) out.images[ctx.jet(j, MultiIndex(n))] = u_new[static_cast<size_t>(j)];

  // Total Jacobian |D_s(X_new^i)|, inverted once over the RatFun field.
  std::vector<std::vector<RatFun>> jac(static_cast<size_t>(n),
                                       std::vector<RatFun>(static_cast<size_t>(n)));
  for (int s = 0; s < n; ++s)
    for (int i = 0; i < n; ++i)
      jac[static_cast<size_t>(s)][static_cast<size_t>(i)] =
          total_derivative(x_new[static_cast<size_t>(i)], s, ctx);
  auto inv = invert_ratfun_matrix(jac);
  if (!inv)
    fail(ErrorKind::SingularJacobian,
         "total Jacobian of the point map is singular; the map does not prolong in this chart");

  for (int L = 1; L <= k; ++L) {
    for (int j = 0; j < m; ++j) {
      for (const auto& tau : multi_indices_of_order(n, L - 1)) {
        const RatFun& prev = out.images.at(ctx.jet(j, tau));
        std::vector<RatFun> rhs;
        rhs.reserve(static_cast<size_t>(n));
        for (int s = 0; s < n; ++s) rhs.push_back(total_derivative(prev, s, ctx));
        for (int i = 0; i < n; ++i) {
          VarId target = ctx.jet(j, tau.bumped(i));
          if (out.images.count(target)) continue;
          RatFun img;
          for (int s = 0; s < n; ++s)
            img += (*inv)[static_cast<size_t>(i)][static_cast<size_t>(s)] *
                   rhs[static_cast<size_t>(s)];
          out.images[target] = std::move(img);
        }
      }
    }
  }
  return out;
}

}  // namespace jetvariant
