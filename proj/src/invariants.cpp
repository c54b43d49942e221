#include "jetvariant/invariants.hpp"

#include <algorithm>
#include <map>

#include "jetvariant/error.hpp"
#include "jetvariant/parser.hpp"

namespace jetvariant {

namespace {

/// Monomials of total degree lo..hi over the given variables, enumerated by
/// ascending degree, then lexicographically in the variable list.
std::vector<std::vector<int>> exponent_tuples(size_t nvars, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(nvars, 0);
  auto rec = [&](auto&& self, size_t pos, int rem) -> void {
    if (pos == nvars) {
      if (rem == 0) out.push_back(cur);
      return;
    }
    for (int t = rem; t >= 0; --t) {
      cur[pos] = t;
      self(self, pos + 1, rem - t);
    }
  };
  for (int d = lo; d <= hi; ++d) rec(rec, 0, d);
  return out;
}

RatFun monomial_over(const std::vector<VarId>& vars, const std::vector<int>& exps) {
  Poly p = Poly::one();
  for (size_t i = 0; i < vars.size(); ++i)
    if (exps[i] > 0) p = p * Poly::variable(vars[i]).pow(exps[i]);
  return RatFun(p);
}

std::string monomial_label(const std::vector<VarId>& vars, const std::vector<int>& exps,
                           const JetContext& ctx) {
  std::string s;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += ctx.name_of(vars[i]);
    if (exps[i] > 1) s += "^" + std::to_string(exps[i]);
  }
  return s.empty() ? "1" : s;
}

/// Reduced prolonged coefficients of one generator over the needed
/// coordinates.
struct ReducedAction {
  std::string name;
  std::map<VarId, RatFun> coeff;
};

ReducedAction reduce_action(const PointVectorField& X, int k, const ReductionTable* table,
                            const JetContext& ctx) {
  ProlongedVectorField Xp = prolong_field(X, k, ctx);
  ReducedAction out;
  out.name = X.name;
  for (int i = 0; i < ctx.n(); ++i) {
    RatFun c = Xp.base_coefficient(i);
    out.coeff[ctx.independent(i)] = table ? reduce(c, *table, ctx) : c;
  }
  for (const auto& [v, c] : Xp.jet_coefficients())
    out.coeff[v] = table ? reduce(c, *table, ctx) : c;
  return out;
}

/// reduce(L_X(P)) for a polynomial P, using reduced coefficients; reduce is a
/// ring homomorphism, so the sum can be reduced factor by factor.
RatFun lie_reduced_poly(const ReducedAction& act, const Poly& p, const ReductionTable* table,
                        const JetContext& ctx) {
  RatFun acc;
  for (size_t r : p.support()) {
    VarId v = ctx.var_at_rank(r);
    auto it = act.coeff.find(v);
    if (it == act.coeff.end())
      fail(ErrorKind::OrderMismatch, "coordinate " + v.debug_name() + " above prolongation order");
    if (it->second.is_zero()) continue;
    RatFun dp(poly_partial(p, v));
    acc += it->second * (table ? reduce(dp, *table, ctx) : dp);
  }
  return acc;
}

/// reduce(L_X(f)) for rational f, via one quotient rule at the top level.
RatFun lie_reduced(const ReducedAction& act, const RatFun& f, const ReductionTable* table,
                   const JetContext& ctx) {
  RatFun ln = lie_reduced_poly(act, f.num(), table, ctx);
  if (f.is_polynomial()) return ln;
  RatFun ld = lie_reduced_poly(act, f.den(), table, ctx);
  RatFun nr = table ? reduce(RatFun(f.num()), *table, ctx) : RatFun(f.num());
  RatFun dr = table ? reduce(RatFun(f.den()), *table, ctx) : RatFun(f.den());
  if (dr.is_zero())
    fail(ErrorKind::DenominatorCollapse, "denominator vanishes on the equation");
  return (ln * dr - nr * ld) / (dr * dr);
}

}  // namespace

std::vector<PointVectorField> instantiate_family(const FamilySpec& fam, int k,
                                                 const JetContext& ctx) {
  std::vector<PointVectorField> out;
  if (fam.pattern == FamilySpec::Pattern::CoefPowers) {
    for (const auto& exps : exponent_tuples(fam.function_of.size(), fam.min_degree, k + 1)) {
      PointVectorField X;
      X.alpha.assign(static_cast<size_t>(ctx.n()), RatFun::zero());
      X.beta.assign(static_cast<size_t>(ctx.m()), RatFun::zero());
      RatFun mono = monomial_over(fam.function_of, exps);
      if (fam.direction.is_independent())
        X.alpha[static_cast<size_t>(fam.direction.indep_index())] = mono;
      else
        X.beta[static_cast<size_t>(fam.direction.dep_index())] = mono;
      X.name = fam.label + "[" + monomial_label(fam.function_of, exps, ctx) + "]";
      out.push_back(std::move(X));
    }
    return out;
  }

  // Hamiltonian pattern on a two-dimensional base.
  if (ctx.n() != 2)
    fail(ErrorKind::SchemaError, "hamiltonian family needs exactly two independent variables");
  std::vector<VarId> xy = {ctx.independent(0), ctx.independent(1)};
  for (const auto& exps : exponent_tuples(2, fam.min_degree, k + 1)) {
    RatFun F = monomial_over(xy, exps);
    PointVectorField X;
    X.alpha = {F.partial(xy[1]), -F.partial(xy[0])};
    X.beta.assign(static_cast<size_t>(ctx.m()), RatFun::zero());
    X.name = fam.label + "[" + monomial_label(xy, exps, ctx) + "]";
    out.push_back(std::move(X));
  }
  return out;
}

std::vector<PointVectorField> instantiate_algebra(const LieAlgebraSpec& g, int k,
                                                  const JetContext& ctx) {
  std::vector<PointVectorField> out = g.fields;
  for (const auto& fam : g.families) {
    auto inst = instantiate_family(fam, k, ctx);
    out.insert(out.end(), inst.begin(), inst.end());
  }
  return out;
}

InvarianceOutcome is_invariant(const LieAlgebraSpec& g, const RatFun& f, const SolvedEquation* eq,
                               int k, const JetContext& ctx) {
  if (f.max_jet_order(ctx) > k)
    fail(ErrorKind::OrderMismatch, "invariant candidate has order above k");
  std::optional<ReductionTable> table;
  if (eq) table = prolong_equation(*eq, std::max(k, eq->max_order()), ctx);
  const ReductionTable* tp = table ? &*table : nullptr;

  for (const auto& X : instantiate_algebra(g, k, ctx)) {
    ReducedAction act = reduce_action(X, k, tp, ctx);
    RatFun residue = lie_reduced(act, f, tp, ctx);
    if (!residue.is_zero()) return {false, InvarianceWitness{X.name, std::move(residue)}};
  }
  return {true, std::nullopt};
}

std::vector<RatFun> find_invariants_linear(const LieAlgebraSpec& g, const Ansatz& ansatz,
                                           const SolvedEquation* eq, const JetContext& ctx) {
  if (!ansatz.denominator.is_polynomial())
    fail(ErrorKind::SchemaError, "ansatz denominator must be a polynomial");
  const Poly& Q = ansatz.denominator.num();
  int k = ansatz.order;

  std::optional<ReductionTable> table;
  if (eq) table = prolong_equation(*eq, std::max(k, eq->max_order()), ctx);
  const ReductionTable* tp = table ? &*table : nullptr;

  // Eligible numerator coordinates: order <= k, unconstrained.
  std::vector<VarId> coords;
  if (ansatz.variables) {
    coords = *ansatz.variables;
  } else {
    for (VarId v : ctx.coordinates(k))
      if (!tp || !tp->constrains(v)) coords.push_back(v);
  }
  for (VarId v : coords)
    if (tp && tp->constrains(v))
      fail(ErrorKind::SchemaError, "ansatz coordinate " + v.debug_name() + " is constrained");
  if (tp)
    for (size_t r : Q.support())
      if (tp->constrains(ctx.var_at_rank(r)))
        fail(ErrorKind::SchemaError, "ansatz denominator must be parametric on the equation");

  int bound = ansatz.degree + Q.total_degree();
  auto tuples = exponent_tuples(coords.size(), 0, bound);
  if (tuples.size() > 300000)
    fail(ErrorKind::SchemaError, "ansatz monomial basis too large");

  std::vector<Poly> numerators;
  numerators.reserve(tuples.size());
  for (const auto& exps : tuples) {
    Poly p = Poly::one();
    for (size_t i = 0; i < coords.size(); ++i)
      if (exps[i] > 0) p = p * Poly::variable(coords[i]).pow(exps[i]);
    numerators.push_back(std::move(p));
  }
  // Columns in ascending term order over the monomial basis.
  std::vector<int> order_idx(numerators.size());
  for (size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = static_cast<int>(i);
  std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
    return Monomial::compare(numerators[static_cast<size_t>(a)].leading().mono,
                             numerators[static_cast<size_t>(b)].leading().mono) < 0;
  });
  std::vector<Poly> basis_mono;
  basis_mono.reserve(numerators.size());
  for (int i : order_idx) basis_mono.push_back(numerators[static_cast<size_t>(i)]);

  int ncols = static_cast<int>(basis_mono.size());
  std::vector<SparseRow> rows;

  for (const auto& X : instantiate_algebra(g, k, ctx)) {
    ReducedAction act = reduce_action(X, k, tp, ctx);

    // Common reduced-coefficient denominator V so that the invariance
    // condition clears to a single polynomial identity per generator.
    Poly V = Poly::one();
    for (const auto& [v, c] : act.coeff) {
      if (c.is_zero() || c.is_polynomial()) continue;
      if (try_divide_exact(V, c.den())) continue;
      if (try_divide_exact(c.den(), V))
        V = c.den();
      else
        V = V * c.den();
    }
    std::map<VarId, Poly> W;
    for (const auto& [v, c] : act.coeff) {
      if (c.is_zero()) continue;
      auto q = try_divide_exact(V, c.den());
      W[v] = c.num() * *q;
    }

    auto lambda_num = [&](const Poly& p) -> Poly {
      Poly acc;
      for (size_t r : p.support()) {
        VarId v = ctx.var_at_rank(r);
        auto it = W.find(v);
        if (it == W.end()) continue;
        acc += it->second * poly_partial(p, v);
      }
      return acc;
    };

    Poly lamQ = lambda_num(Q);
    struct MonoLess {
      bool operator()(const Monomial& a, const Monomial& b) const {
        return Monomial::compare(a, b) < 0;
      }
    };
    std::map<Monomial, SparseRow, MonoLess> by_monomial;
    for (int col = 0; col < ncols; ++col) {
      const Poly& M = basis_mono[static_cast<size_t>(col)];
      Poly G = Q * lambda_num(M) - M * lamQ;
      for (const auto& t : G.terms()) by_monomial[t.mono].emplace_back(col, t.coeff);
    }
    for (auto& [mono, row] : by_monomial) {
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(row));
    }
  }

  KernelResult kr = exact_kernel(std::move(rows), ncols);

  std::vector<RatFun> out;
  for (const auto& vec : kr.basis) {
    Poly P;
    for (int col = 0; col < ncols; ++col)
      if (!vec[static_cast<size_t>(col)].is_zero())
        P += basis_mono[static_cast<size_t>(col)].times_coeff(vec[static_cast<size_t>(col)]);
    out.push_back(RatFun(P, Q));
  }

  for (const auto& f : out) {
    auto check = is_invariant(g, f, eq, k, ctx);
    if (!check.invariant)
      throw std::logic_error("kernel element failed the invariance re-check");
  }
  return out;
}

std::vector<Derivation> tresse_derivatives(const std::vector<RatFun>& fs, const JetContext& ctx,
                                           const ReductionTable* table) {
  size_t n = static_cast<size_t>(ctx.n());
  if (fs.size() != n)
    fail(ErrorKind::SchemaError, "tresse_derivatives needs exactly n functions");
  std::vector<std::vector<RatFun>> DF(n, std::vector<RatFun>(n));
  for (size_t s = 0; s < n; ++s)
    for (size_t j = 0; j < n; ++j) {
      RatFun d = total_derivative(fs[j], static_cast<int>(s), ctx);
      DF[s][j] = table ? reduce(d, *table, ctx) : d;
    }
  auto inv = invert_ratfun_matrix(DF);
  if (!inv)
    fail(ErrorKind::DegenerateJacobian,
         "total-derivative Jacobian is degenerate; the chosen functions are dependent");
  std::vector<Derivation> out;
  for (size_t i = 0; i < n; ++i) {
    Derivation d;
    d.name = "tresse_" + std::to_string(i + 1);
    d.coeffs = (*inv)[i];
    out.push_back(std::move(d));
  }
  return out;
}

RatFun apply_derivation(const Derivation& d, const RatFun& f, const JetContext& ctx,
                        const ReductionTable* table) {
  if (d.coeffs.size() != static_cast<size_t>(ctx.n()))
    fail(ErrorKind::SchemaError, "derivation has wrong component count");
  RatFun acc;
  for (int i = 0; i < ctx.n(); ++i) {
    if (d.coeffs[static_cast<size_t>(i)].is_zero()) continue;
    acc += d.coeffs[static_cast<size_t>(i)] * total_derivative(f, i, ctx);
  }
  return table ? reduce(acc, *table, ctx) : acc;
}

DerivationCheck verify_invariant_derivation(const Derivation& nabla, const LieAlgebraSpec& g,
                                            const std::vector<RatFun>& probes,
                                            const SolvedEquation* eq, int k,
                                            const JetContext& ctx) {
  std::optional<ReductionTable> table;
  if (eq) table = prolong_equation(*eq, std::max(k + 1, eq->max_order()), ctx);
  const ReductionTable* tp = table ? &*table : nullptr;

  for (size_t p = 0; p < probes.size(); ++p) {
    auto pre = is_invariant(g, probes[p], eq, k, ctx);
    if (!pre.invariant)
      fail(ErrorKind::SchemaError,
           "probe " + std::to_string(p + 1) + " is not invariant; the probe contract requires it");
    RatFun image = apply_derivation(nabla, probes[p], ctx, tp);
    auto post = is_invariant(g, image, eq, k + 1, ctx);
    if (!post.invariant) {
      DerivationCheck out;
      out.ok = false;
      out.detail = "probe " + std::to_string(p + 1) + " maps outside the invariants (generator " +
                   post.witness->generator + ")";
      return out;
    }
  }
  return {true, ""};
}

Derivation commutator(const Derivation& a, const Derivation& b, const JetContext& ctx,
                      const ReductionTable* table) {
  Derivation out;
  out.name = "[" + a.name + "," + b.name + "]";
  out.coeffs.reserve(static_cast<size_t>(ctx.n()));
  for (int i = 0; i < ctx.n(); ++i) {
    RatFun ci = apply_derivation(a, b.coeffs[static_cast<size_t>(i)], ctx, table) -
                apply_derivation(b, a.coeffs[static_cast<size_t>(i)], ctx, table);
    out.coeffs.push_back(std::move(ci));
  }
  return out;
}

std::optional<std::vector<RatFun>> decompose_commutator(const Derivation& target,
                                                        const std::vector<Derivation>& basis,
                                                        const JetContext& ctx,
                                                        const ReductionTable* table) {
  size_t n = static_cast<size_t>(ctx.n());
  std::vector<std::vector<RatFun>> A(n, std::vector<RatFun>(basis.size(), RatFun::zero()));
  std::vector<RatFun> b(n, RatFun::zero());
  for (size_t i = 0; i < n; ++i) {
    for (size_t r = 0; r < basis.size(); ++r) {
      RatFun c = basis[r].coeffs[i];
      A[i][r] = table ? reduce(c, *table, ctx) : c;
    }
    RatFun t = target.coeffs[i];
    b[i] = table ? reduce(t, *table, ctx) : t;
  }
  return solve_ratfun_system(std::move(A), std::move(b));
}

bool check_first_integral(const RatFun& f, const SolvedEquation& eq, const JetContext& ctx) {
  int order = std::max(f.max_jet_order(ctx) + 1, eq.max_order());
  ReductionTable table = prolong_equation(eq, order, ctx);
  for (int i = 0; i < ctx.n(); ++i)
    if (!reduce(total_derivative(f, i, ctx), table, ctx).is_zero()) return false;
  return true;
}

}  // namespace jetvariant
