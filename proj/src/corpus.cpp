#include "jetvariant/corpus.hpp"

#include <algorithm>
#include <future>

#include "jetvariant/error.hpp"
#include "jetvariant/parser.hpp"
#include "jetvariant/scenario.hpp"

namespace jetvariant {

namespace {

struct Checker {
  std::vector<CheckOutcome> out;

  void record(const std::string& name, const std::string& kind, bool pass,
              const std::string& detail = "") {
    out.push_back({name, kind, pass, detail});
  }

  void invariant(const std::string& name, const LieAlgebraSpec& g, const RatFun& f,
                 const SolvedEquation* eq, int k, const JetContext& ctx) {
    auto res = is_invariant(g, f, eq, k, ctx);
    std::string detail;
    if (!res.invariant)
      detail = "residue under " + res.witness->generator + ": " +
               print_ratfun(res.witness->residue, ctx);
    record(name, "is_invariant", res.invariant, detail);
  }

  void equal(const std::string& name, const std::string& kind, const RatFun& got,
             const RatFun& want, const JetContext& ctx) {
    bool ok = got.equals(want);
    record(name, kind, ok, ok ? "" : "got " + print_ratfun(got, ctx));
  }
};

/// Rank of the span of rational functions, via cross-multiplied numerator
/// coefficient vectors over a shared denominator.
int span_rank(const std::vector<RatFun>& fs) {
  if (fs.empty()) return 0;
  std::vector<Poly> nums;
  for (size_t i = 0; i < fs.size(); ++i) {
    Poly scaled = fs[i].num();
    for (size_t j = 0; j < fs.size(); ++j)
      if (j != i) scaled = scaled * fs[j].den();
    nums.push_back(std::move(scaled));
  }
  std::vector<Monomial> monos;
  for (const auto& p : nums)
    for (const auto& t : p.terms()) monos.push_back(t.mono);
  auto less = [](const Monomial& a, const Monomial& b) { return Monomial::compare(a, b) < 0; };
  std::sort(monos.begin(), monos.end(), less);
  monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
  QMatrix m;
  for (const auto& p : nums) {
    std::vector<Rational> row(monos.size(), Rational(0));
    for (const auto& t : p.terms()) {
      auto it = std::lower_bound(monos.begin(), monos.end(), t.mono, less);
      row[static_cast<size_t>(it - monos.begin())] = t.coeff;
    }
    m.push_back(std::move(row));
  }
  return exact_rank(m);
}

bool in_span(const std::vector<RatFun>& basis, const RatFun& f) {
  std::vector<RatFun> with = basis;
  with.push_back(f);
  return span_rank(with) == span_rank(basis);
}

std::string profile_string(const HilbertProfile& p) {
  std::string s;
  for (int d : p.d) {
    if (!s.empty()) s += " ";
    s += std::to_string(d);
  }
  return s;
}

void check_profile(Checker& ck, const std::string& name, const HilbertProfile& got,
                   const std::vector<int>& want) {
  bool ok = got.d == want;
  ck.record(name, "hilbert_function", ok, "profile " + profile_string(got));
}

// ---------------------------------------------------------------------------

void case_euclidean(const Scenario& sc, bool /*fast*/, Checker& ck) {
  const JetContext& c = sc.ctx;
  RatFun k2 = sc.scalar_expression("K2");

  ck.invariant("K2 annihilated by the proper motion algebra", sc.algebra, k2, nullptr, 2, c);

  const auto& refl = sc.expression("reflection");
  PointMap reflection = prolong_point_map({refl[0]}, {refl[1]}, 2, c);
  ck.equal("reflection fixes K2", "pullback", reflection.pullback(k2, c), k2, c);
  ck.equal("reflection flips the curvature numerator", "pullback",
           reflection.pullback(sc.scalar_expression("K_num"), c),
           -sc.scalar_expression("K_num"), c);
  ck.equal("reflection fixes the curvature denominator base", "pullback",
           reflection.pullback(sc.scalar_expression("K_den_base"), c),
           sc.scalar_expression("K_den_base"), c);

  const auto& scal = sc.expression("scaling");
  PointMap scaling = prolong_point_map({scal[0]}, {scal[1]}, 2, c);
  ck.equal("scaling halves y2", "pullback", scaling.images.at(*c.resolve("y2")),
           parse_ratfun("y2/2", c), c);

  ProlongedVectorField rot2 = prolong_field(sc.algebra.fields[2], 2, c);
  ck.equal("rotation coefficient at y1", "prolong_field", rot2.jet_coefficient(*c.resolve("y1")),
           parse_ratfun("1 + y1^2", c), c);
  ck.equal("rotation coefficient at y2", "prolong_field", rot2.jet_coefficient(*c.resolve("y2")),
           parse_ratfun("3*y1*y2", c), c);

  Ansatz a;
  a.order = 2;
  a.degree = 2;
  a.denominator = sc.scalar_expression("ansatz_den");
  auto basis = find_invariants_linear(sc.algebra, a, nullptr, c);
  bool find_ok = basis.size() == 2 && in_span(basis, RatFun::one()) && in_span(basis, k2);
  ck.record("order-2 kernel is spanned by 1 and K2", "find_invariants_linear", find_ok,
            "dimension " + std::to_string(basis.size()));

  Derivation nabla = sc.derivation_expression("nabla");
  auto dcheck = verify_invariant_derivation(nabla, sc.algebra, {k2}, nullptr, 2, c);
  ck.record("K d/ds is an invariant derivation on the probe K2", "verify_invariant_derivation",
            dcheck.ok, dcheck.detail);
  Derivation dx{"D_x", {RatFun::one()}, ""};
  auto dxcheck = verify_invariant_derivation(dx, sc.algebra, {k2}, nullptr, 2, c);
  ck.record("bare D_x fails the invariant-derivation probe", "verify_invariant_derivation",
            !dxcheck.ok, dxcheck.detail);

  HilbertProfile prof = hilbert_function(sc.algebra, nullptr, 5, 8, sc.sampling, c);
  check_profile(ck, "hilbert profile 0 0 1 1 1 1", prof, {0, 0, 1, 1, 1, 1});
  PoincareFit fit = poincare_fit(prof.d);
  ck.record("poincare series z^2/(1-z)", "poincare_fit",
            fit.fits && fit.d == 0 && fit.numerator == std::vector<long>{0, 0, 1},
            fit.fits ? "fits, d=" + std::to_string(fit.d) : "unstable");
}

void case_flux(const Scenario& sc, bool fast, Checker& ck) {
  const JetContext& g = sc.ctx;
  const SolvedEquation& eq = *sc.equation;

  bool all_sym = true;
  std::string bad;
  for (const auto& X : sc.algebra.fields)
    if (!is_symmetry(X, eq, g)) {
      all_sym = false;
      bad = X.name;
    }
  ck.record("all 8 projective generators are symmetries", "is_symmetry", all_sym, bad);

  // The order-6 invariant is checked as given; a nonzero residue would be
  // reported as the result, not repaired away.
  ck.invariant("I6^3 is invariant on the equation at order 6", sc.algebra,
               sc.scalar_expression("I6_cubed"), &eq, 6, g);

  HilbertProfile prof = hilbert_function(sc.algebra, &eq, 6, 8, sc.sampling, g);
  check_profile(ck, "hilbert profile 0 0 0 0 0 0 1", prof, {0, 0, 0, 0, 0, 0, 1});

  if (!fast) {
    ReductionTable table = prolong_equation(eq, 8, g);
    Derivation nabla = sc.derivation_expression("nabla1_over_I6");
    RatFun image = apply_derivation(nabla, sc.scalar_expression("I6_cubed"), g, &table);
    bool order7 = image.max_jet_order(g) == 7;
    auto res = is_invariant(sc.algebra, image, &eq, 7, g);
    ck.record("I6^-1 nabla_1 maps I6^3 to an order-7 invariant", "apply_derivation",
              order7 && res.invariant,
              res.invariant ? "" : "residue under " + res.witness->generator);
  }
}

void case_flux_original(const Scenario& sc, bool /*fast*/, Checker& ck) {
  const JetContext& g = sc.ctx;
  const SolvedEquation& eq = *sc.equation;

  bool all_sym = true;
  std::string bad;
  for (const auto& X : instantiate_algebra(sc.algebra, eq.max_order(), g))
    if (!is_symmetry(X, eq, g)) {
      all_sym = false;
      bad = X.name;
    }
  ck.record("projective and reparametrization generators are symmetries", "is_symmetry", all_sym,
            bad);

  Ansatz a;
  a.order = 1;
  a.degree = 2;
  auto basis = find_invariants_linear(sc.algebra, a, &eq, g);
  ck.record("no order-1 invariants beyond constants", "find_invariants_linear",
            basis.size() == 1 && in_span(basis, RatFun::one()),
            "dimension " + std::to_string(basis.size()));

  HilbertProfile prof = hilbert_function(sc.algebra, &eq, 1, 8, sc.sampling, g);
  check_profile(ck, "orders 0..1 carry no invariants", prof, {0, 0});
}

void case_monge(const Scenario& sc, bool /*fast*/, Checker& ck) {
  const JetContext& c = sc.ctx;
  const SolvedEquation& eq = *sc.equation;

  ck.record("J1 is a first integral", "check_first_integral",
            check_first_integral(sc.scalar_expression("J1"), eq, c));
  ck.record("J2 is a first integral", "check_first_integral",
            check_first_integral(sc.scalar_expression("J2"), eq, c));
  ck.record("y2 is not a first integral", "check_first_integral",
            !check_first_integral(parse_ratfun("y2", c), eq, c));

  // Rationalized curvature syzygy: with u = K^2 and the invariant derivation
  // nabla = K d/ds, the combination
  //   u*nabla(w)/2 - 3 v w + 55/18 v^3/u + 2 u^3 v,   v = nabla(u), w = nabla(v)
  // clears every half-power from the third-order relation among K', K'', K'''
  // and must vanish on the equation.
  Derivation nabla = sc.derivation_expression("nabla");
  RatFun u = sc.scalar_expression("K2");
  RatFun v = apply_derivation(nabla, u, c);
  RatFun w = apply_derivation(nabla, v, c);
  RatFun S = u * apply_derivation(nabla, w, c) * RatFun::constant(Rational(1, 2)) -
             RatFun::constant(Rational(3)) * v * w +
             RatFun::constant(Rational(55, 18)) * v.pow(3) / u +
             RatFun::constant(Rational(2)) * u.pow(3) * v;
  ReductionTable table = prolong_equation(eq, 6, c);
  ck.record("curvature syzygy is nonzero off the equation", "reduce", !S.is_zero());
  ck.record("curvature syzygy reduces to zero on the equation", "reduce",
            reduce(S, table, c).is_zero());
}

void case_birkhoff(const Scenario& sc, bool fast, Checker& ck) {
  const JetContext& b = sc.ctx;
  const SolvedEquation& eq = *sc.equation;

  ck.invariant("the Hessian determinant I2 is invariant", sc.algebra,
               sc.scalar_expression("I2"), &eq, 2, b);

  HilbertProfile prof = hilbert_function(sc.algebra, &eq, 6, 8, sc.sampling, b);
  check_profile(ck, "one new invariant in each even order", prof, {0, 0, 1, 0, 1, 0, 1});
  PoincareFit fit = poincare_fit(prof.d);
  ck.record("profile admits no rational series fit", "poincare_fit", !fit.fits,
            fit.fits ? "unexpected fit with d=" + std::to_string(fit.d) : "unstable");

  if (fast) return;

  ck.invariant("the order-4 normal form coefficient I4 is invariant", sc.algebra,
               sc.scalar_expression("I4"), &eq, 4, b);

  // Second-order operator commutation [Delta, X_F]|_E = 0, coefficient by
  // coefficient, for the family truncated at the I4 order.
  const auto& d2 = sc.expression("delta_D2_coeffs");
  const auto& d1 = sc.expression("delta_D1_coeffs");
  auto Delta = [&](const RatFun& f) {
    RatFun dx = total_derivative(f, 0, b), dy = total_derivative(f, 1, b);
    return d2[0] * total_derivative(dx, 0, b) + d2[1] * total_derivative(dx, 1, b) +
           d2[2] * total_derivative(dy, 1, b) + d1[0] * dx + d1[1] * dy;
  };
  ReductionTable table = prolong_equation(eq, 6, b);
  RatFun x = parse_ratfun("x", b), y = parse_ratfun("y", b);
  RatFun half = RatFun::constant(Rational(1, 2));
  RatFun two = RatFun::constant(Rational(2));
  bool all_zero = true;
  std::string detail;
  for (const auto& X : instantiate_algebra(sc.algebra, 4, b)) {
    ProlongedVectorField Xp = prolong_field(X, 5, b);
    auto C = [&](const RatFun& f) {
      return Delta(lie_derivative(Xp, f, b)) - lie_derivative(Xp, Delta(f), b);
    };
    RatFun B0 = C(RatFun::one());
    RatFun B10 = C(x) - B0 * x;
    RatFun B01 = C(y) - B0 * y;
    RatFun B20 = (C(x * x) - B0 * x * x - B10 * x * two) * half;
    RatFun B11 = C(x * y) - B0 * x * y - B10 * y - B01 * x;
    RatFun B02 = (C(y * y) - B0 * y * y - B01 * y * two) * half;
    for (const RatFun& B : {B0, B10, B01, B20, B11, B02})
      if (!reduce(B, table, b).is_zero()) {
        all_zero = false;
        detail = "nonzero coefficient for " + X.name;
      }
  }
  ck.record("[Delta, X_F] vanishes on the equation for the truncated family",
            "operator_commutator", all_zero, detail);
}

void case_pseudogroup(const Scenario& sc, bool /*fast*/, Checker& ck) {
  const JetContext& g = sc.ctx;
  const SolvedEquation& eq = *sc.equation;

  Ansatz a;
  a.order = 1;
  a.degree = 1;
  auto basis = find_invariants_linear(sc.algebra, a, &eq, g);
  bool ok = basis.size() == 2 && in_span(basis, RatFun::one()) &&
            in_span(basis, sc.scalar_expression("uy"));
  ck.record("order-1 invariants are exactly span{1, u_y}", "find_invariants_linear", ok,
            "dimension " + std::to_string(basis.size()));

  Derivation dy = sc.derivation_expression("D_y");
  auto dcheck = verify_invariant_derivation(
      dy, sc.algebra, {sc.scalar_expression("uy"), sc.scalar_expression("uyy")}, &eq, 2, g);
  ck.record("D_y passes the invariant-derivation probes", "verify_invariant_derivation",
            dcheck.ok, dcheck.detail);

  ck.invariant("u_y is invariant", sc.algebra, sc.scalar_expression("uy"), &eq, 1, g);
  ck.invariant("u_yy is invariant", sc.algebra, sc.scalar_expression("uyy"), &eq, 2, g);
  ck.invariant("u_yyy is invariant", sc.algebra, sc.scalar_expression("uyyy"), &eq, 3, g);
}

std::vector<VarId> first_order_jets(const JetContext& ctx) {
  std::vector<VarId> out;
  for (VarId v : ctx.coordinates(1))
    if (v.is_jet() && v.order() == 1) out.push_back(v);
  return out;
}

void case_winding1(const Scenario& sc, bool /*fast*/, Checker& ck) {
  const JetContext& w = sc.ctx;
  ck.invariant("u_z energy is invariant", sc.algebra, sc.scalar_expression("I1p"), nullptr, 1, w);
  ck.invariant("u_w energy is invariant", sc.algebra, sc.scalar_expression("I1pp"), nullptr, 1,
               w);

  Ansatz a;
  a.order = 1;
  a.degree = 2;
  a.variables = first_order_jets(w);
  auto basis = find_invariants_linear(sc.algebra, a, nullptr, w);
  bool ok = basis.size() == 5 && in_span(basis, sc.scalar_expression("diag_a")) &&
            in_span(basis, sc.scalar_expression("diag_b"));
  ck.record("resonant slope gains two extra quadratic invariants", "find_invariants_linear", ok,
            "dimension " + std::to_string(basis.size()));
}

void case_winding2(const Scenario& sc, bool /*fast*/, Checker& ck) {
  const JetContext& w = sc.ctx;
  ck.invariant("u_z energy is invariant", sc.algebra, sc.scalar_expression("I1p"), nullptr, 1, w);
  ck.invariant("u_w energy is invariant", sc.algebra, sc.scalar_expression("I1pp"), nullptr, 1,
               w);

  Ansatz a;
  a.order = 1;
  a.degree = 2;
  a.variables = first_order_jets(w);
  auto basis2 = find_invariants_linear(sc.algebra, a, nullptr, w);
  ck.record("quadratic first-order kernel has dimension 3", "find_invariants_linear",
            basis2.size() == 3, "dimension " + std::to_string(basis2.size()));

  a.degree = 3;
  auto basis3 = find_invariants_linear(sc.algebra, a, nullptr, w);
  ck.record("slope-2 resonance appears at cubic degree", "find_invariants_linear",
            basis3.size() == 5, "dimension " + std::to_string(basis3.size()));
}

struct CaseSpec {
  const char* name;
  const char* file;
  void (*run)(const Scenario&, bool, Checker&);
};

constexpr CaseSpec kCases[] = {
    {"euclidean-curves", "euclidean-curves.json", case_euclidean},
    {"flux-sl3", "flux-sl3.json", case_flux},
    {"flux-original", "flux-original.json", case_flux_original},
    {"quadrics-monge", "quadrics-monge.json", case_monge},
    {"birkhoff", "birkhoff.json", case_birkhoff},
    {"pseudogroup-ux0", "pseudogroup-ux0.json", case_pseudogroup},
    {"winding-lambda1", "winding-lambda1.json", case_winding1},
    {"winding-lambda2", "winding-lambda2.json", case_winding2},
};

CaseReport run_case(const CaseSpec& spec, const std::string& data_dir, bool fast) {
  CaseReport report;
  report.name = spec.name;
  Checker ck;
  try {
    Scenario sc = load_scenario(data_dir + "/" + spec.file);
    spec.run(sc, fast, ck);
  } catch (const std::exception& e) {
    ck.record("case execution", "error", false, e.what());
  }
  report.checks = std::move(ck.out);
  report.pass = true;
  for (const auto& c : report.checks) report.pass &= c.pass;
  return report;
}

}  // namespace

std::vector<std::string> corpus_case_names() {
  std::vector<std::string> out;
  for (const auto& c : kCases) out.emplace_back(c.name);
  return out;
}

CorpusReport run_corpus(const std::string& data_dir, const std::string& filter, bool fast) {
  CorpusReport report;
  std::vector<std::future<CaseReport>> futures;
  std::vector<const CaseSpec*> selected;
  for (const auto& c : kCases) {
    if (!filter.empty() && std::string(c.name).find(filter) == std::string::npos) continue;
    selected.push_back(&c);
  }
  futures.reserve(selected.size());
  for (const CaseSpec* c : selected)
    futures.push_back(std::async(std::launch::async,
                                 [c, &data_dir, fast] { return run_case(*c, data_dir, fast); }));
  for (auto& f : futures) {
    report.cases.push_back(f.get());
    report.pass &= report.cases.back().pass;
  }
  return report;
}

}  // namespace jetvariant
