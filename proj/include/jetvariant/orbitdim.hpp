#pragma once

#include <cstdint>
#include <optional>

#include "jetvariant/invariants.hpp"

namespace jetvariant {

/// Deterministic sampling policy. All randomness flows from (seed, trial,
/// attempt); the range is the closed integer interval [lo, hi]. Assignments
/// that zero a declared excluded denominator or a table denominator are
/// rejected and resampled within the retry budget.
struct SampleSpec {
  uint64_t seed = 1;
  long lo = -10;
  long hi = 10;
  std::vector<RatFun> exclude;
  int retries = 100;
};

/// Exact rational assignment to every coordinate of order <= order;
/// constrained coordinates are filled from the reduction table.
struct JetPoint {
  int order = 0;
  std::map<VarId, Rational> values;
};

JetPoint sample_point(const JetContext& ctx, int k, const SolvedEquation* eq,
                      const SampleSpec& spec, int trial);

/// One row per instantiated generator, one column per unconstrained
/// coordinate of order <= k; rank is the exact rank over the rationals.
struct OrbitTangentSample {
  std::vector<VarId> columns;
  std::vector<std::string> generators;
  QMatrix matrix;
  int rank = 0;
};

OrbitTangentSample orbit_tangent_sample(const LieAlgebraSpec& g, const JetPoint& p, int k,
                                        const SolvedEquation* eq, const JetContext& ctx);

/// Exact orbit dimension at one point. NotASymmetry if an equation is
/// attached and some instantiated generator is not tangent to it.
int orbit_dimension_at(const LieAlgebraSpec& g, const JetPoint& p, int k,
                       const SolvedEquation* eq, const JetContext& ctx);

/// Maximum of orbit_dimension_at over seeded samples; deterministic.
int generic_orbit_dimension(const LieAlgebraSpec& g, int k, const SolvedEquation* eq, int trials,
                            const SampleSpec& spec, const JetContext& ctx);

/// d_k = (dim_k - orbit_k) - (dim_{k-1} - orbit_{k-1}), the number of new
/// independent invariants of pure order k at regular points.
struct HilbertProfile {
  int max_order = 0;
  std::vector<int> d;         // d_0..d_K
  std::vector<long> ambient;  // unconstrained coordinate counts per order
  std::vector<int> orbit;     // generic orbit dimensions per order
};

HilbertProfile hilbert_function(const LieAlgebraSpec& g, const SolvedEquation* eq, int K,
                                int trials, const SampleSpec& spec, const JetContext& ctx);

/// Rational-series fit d_k ~ R(z)/(1-z)^(d+1): the smallest d whose (d+1)-fold
/// forward difference is eventually zero inside the window, with R recovered
/// by multiplication and re-verified against the whole window.
struct PoincareFit {
  bool fits = false;  // status: fits / unstable
  int d = -1;
  std::vector<long> numerator;  // coefficients of R(z), ascending
  int window = 0;
};

PoincareFit poincare_fit(const std::vector<int>& d_seq);

}  // namespace jetvariant
