#include "jetvariant/orbitdim.hpp"

#include <algorithm>

#include "jetvariant/error.hpp"

namespace jetvariant {

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::optional<ReductionTable> make_table(const SolvedEquation* eq, int k, const JetContext& ctx) {
  if (!eq) return std::nullopt;
  return prolong_equation(*eq, std::max(k, eq->max_order()), ctx);
}

std::vector<VarId> unconstrained_coordinates(const ReductionTable* table, int k,
                                             const JetContext& ctx) {
  std::vector<VarId> out;
  for (VarId v : ctx.coordinates(k))
    if (!table || !table->constrains(v)) out.push_back(v);
  return out;
}

}  // namespace

JetPoint sample_point(const JetContext& ctx, int k, const SolvedEquation* eq,
                      const SampleSpec& spec, int trial) {
  auto table = make_table(eq, k, ctx);
  const ReductionTable* tp = table ? &*table : nullptr;
  long span = spec.hi - spec.lo + 1;
  if (span <= 0) fail(ErrorKind::SchemaError, "empty sampling range");

  for (int attempt = 0; attempt < spec.retries; ++attempt) {
    uint64_t state = spec.seed * 0x9e3779b97f4a7c15ull + 0x1234567u;
    state ^= static_cast<uint64_t>(trial) * 0xff51afd7ed558ccdull;
    state ^= static_cast<uint64_t>(attempt) * 0xc4ceb9fe1a85ec53ull;

    JetPoint p;
    p.order = k;
    for (VarId v : ctx.coordinates(k)) {
      if (tp && tp->constrains(v)) continue;
      long value = spec.lo + static_cast<long>(splitmix64(state) % static_cast<uint64_t>(span));
      p.values.emplace(v, Rational(value));
    }
    try {
      if (tp)
        for (const auto& [v, rhs] : tp->entries()) {
          if (!v.is_independent() && v.order() > k) continue;
          p.values[v] = rhs.evaluate(p.values);
        }
      bool excluded = false;
      for (const auto& q : spec.exclude) {
        // An exclusion only constrains orders where it is a function.
        if (q.max_jet_order(ctx) > k) continue;
        if (q.evaluate(p.values).is_zero()) {
          excluded = true;
          break;
        }
      }
      if (excluded) continue;
    } catch (const EngineError& e) {
      if (e.kind() == ErrorKind::DenominatorVanishes) continue;
      throw;
    }
    return p;
  }
  fail(ErrorKind::ExhaustedRetries,
       "no admissible sample point after " + std::to_string(spec.retries) + " attempts");
}

namespace {

/// Generators prolonged, symmetry-checked and reduced once; rows are then
/// cheap exact evaluations per sample point.
struct PreparedRows {
  std::vector<VarId> columns;
  std::vector<std::string> generators;
  std::vector<std::vector<RatFun>> coeffs;  // per generator, per column
};

PreparedRows prepare_rows(const LieAlgebraSpec& g, int k, const SolvedEquation* eq,
                          const JetContext& ctx) {
  auto table = make_table(eq, k, ctx);
  const ReductionTable* tp = table ? &*table : nullptr;
  PreparedRows out;
  out.columns = unconstrained_coordinates(tp, k, ctx);
  for (const auto& X : instantiate_algebra(g, k, ctx)) {
    if (eq && !is_symmetry(X, *eq, ctx))
      fail(ErrorKind::NotASymmetry,
           "generator " + X.name + " is not a symmetry of the attached equation");
    ProlongedVectorField Xp = prolong_field(X, k, ctx);
    std::vector<RatFun> row;
    row.reserve(out.columns.size());
    for (VarId v : out.columns) {
      RatFun c = Xp.coefficient(v);
      if (tp) c = reduce(c, *tp, ctx);
      row.push_back(std::move(c));
    }
    out.generators.push_back(X.name);
    out.coeffs.push_back(std::move(row));
  }
  return out;
}

OrbitTangentSample evaluate_rows(const PreparedRows& rows, const JetPoint& p) {
  OrbitTangentSample out;
  out.columns = rows.columns;
  out.generators = rows.generators;
  for (const auto& row : rows.coeffs) {
    std::vector<Rational> vals;
    vals.reserve(row.size());
    for (const auto& c : row) vals.push_back(c.evaluate(p.values));
    out.matrix.push_back(std::move(vals));
  }
  out.rank = exact_rank(out.matrix);
  return out;
}

}  // namespace

OrbitTangentSample orbit_tangent_sample(const LieAlgebraSpec& g, const JetPoint& p, int k,
                                        const SolvedEquation* eq, const JetContext& ctx) {
  if (p.order < k) fail(ErrorKind::OrderMismatch, "sample point order below requested order");
  return evaluate_rows(prepare_rows(g, k, eq, ctx), p);
}

int orbit_dimension_at(const LieAlgebraSpec& g, const JetPoint& p, int k, const SolvedEquation* eq,
                       const JetContext& ctx) {
  return orbit_tangent_sample(g, p, k, eq, ctx).rank;
}

namespace {

int generic_orbit_dimension_prepared(const PreparedRows& rows, const JetContext& ctx, int k,
                                     const SolvedEquation* eq, int trials,
                                     const SampleSpec& spec) {
  int best = -1;
  for (int trial = 0; trial < trials; ++trial) {
    JetPoint p = sample_point(ctx, k, eq, spec, trial);
    try {
      best = std::max(best, evaluate_rows(rows, p).rank);
    } catch (const EngineError& e) {
      // A coefficient denominator can still vanish at an admissible point;
      // such a trial is skipped deterministically.
      if (e.kind() != ErrorKind::DenominatorVanishes) throw;
    }
  }
  if (best < 0)
    fail(ErrorKind::ExhaustedRetries, "all trials hit vanishing coefficient denominators");
  return best;
}

}  // namespace

int generic_orbit_dimension(const LieAlgebraSpec& g, int k, const SolvedEquation* eq, int trials,
                            const SampleSpec& spec, const JetContext& ctx) {
  if (trials < 1) fail(ErrorKind::SchemaError, "trials must be at least 1");
  return generic_orbit_dimension_prepared(prepare_rows(g, k, eq, ctx), ctx, k, eq, trials, spec);
}

HilbertProfile hilbert_function(const LieAlgebraSpec& g, const SolvedEquation* eq, int K,
                                int trials, const SampleSpec& spec, const JetContext& ctx) {
  if (K < 1) fail(ErrorKind::SchemaError, "hilbert_function needs K >= 1");
  HilbertProfile out;
  out.max_order = K;
  long prev_codim = 0;
  for (int k = 0; k <= K; ++k) {
    PreparedRows rows = prepare_rows(g, k, eq, ctx);
    long ambient = static_cast<long>(rows.columns.size());
    int orbit = generic_orbit_dimension_prepared(rows, ctx, k, eq, trials, spec);
    long codim = ambient - orbit;
    out.ambient.push_back(ambient);
    out.orbit.push_back(orbit);
    out.d.push_back(static_cast<int>(codim - prev_codim));
    prev_codim = codim;
  }
  return out;
}

PoincareFit poincare_fit(const std::vector<int>& d_seq) {
  if (d_seq.size() < 4) fail(ErrorKind::SchemaError, "poincare_fit needs at least 4 orders");
  int len = static_cast<int>(d_seq.size());
  PoincareFit out;
  out.window = len;

  for (int d = 0; d + 2 <= len - 1; ++d) {
    // (d+1)-fold forward difference.
    std::vector<long> e(d_seq.begin(), d_seq.end());
    for (int r = 0; r < d + 1; ++r) {
      std::vector<long> next;
      for (size_t i = 0; i + 1 < e.size(); ++i) next.push_back(e[i + 1] - e[i]);
      e = std::move(next);
    }
    int k0 = static_cast<int>(e.size());
    while (k0 > 0 && e[static_cast<size_t>(k0 - 1)] == 0) --k0;
    int zero_tail = static_cast<int>(e.size()) - k0;
    if (zero_tail < 2) continue;

    // R(z) = (1-z)^{d+1} * sum d_k z^k, truncated to degree k0 + d.
    std::vector<long> binom_signed(static_cast<size_t>(d + 2), 0);
    for (int i = 0; i <= d + 1; ++i) {
      long b = static_cast<long>(binomial(d + 1, i));
      binom_signed[static_cast<size_t>(i)] = (i % 2 == 0) ? b : -b;
    }
    int degR = k0 + d;
    std::vector<long> R(static_cast<size_t>(degR + 1), 0);
    for (int i = 0; i <= degR; ++i)
      for (int j = 0; j <= d + 1 && j <= i; ++j)
        if (i - j < len) R[static_cast<size_t>(i)] += binom_signed[static_cast<size_t>(j)] *
                                                      static_cast<long>(d_seq[static_cast<size_t>(i - j)]);
    while (R.size() > 1 && R.back() == 0) R.pop_back();

    // Verify: the series R(z)/(1-z)^{d+1} must reproduce the whole window.
    std::vector<long> series(static_cast<size_t>(len), 0);
    for (int k = 0; k < len; ++k) {
      long acc = 0;
      for (int i = 0; i <= k && i < static_cast<int>(R.size()); ++i)
        acc += R[static_cast<size_t>(i)] * static_cast<long>(binomial(k - i + d, d));
      series[static_cast<size_t>(k)] = acc;
    }
    bool ok = true;
    for (int k = 0; k < len; ++k) ok &= series[static_cast<size_t>(k)] == d_seq[static_cast<size_t>(k)];
    if (!ok) continue;

    out.fits = true;
    out.d = d;
    out.numerator = std::move(R);
    return out;
  }
  return out;  // unstable
}

}  // namespace jetvariant
