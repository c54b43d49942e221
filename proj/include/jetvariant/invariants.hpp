#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jetvariant/equation.hpp"
#include "jetvariant/linalg.hpp"

namespace jetvariant {

/// One-parameter coefficient pattern made finite by monomial truncation: the
/// prolonged action at jet order k depends only on the (k+1)-jet of the
/// coefficients, so monomials of degree <= k+1 span the evaluations exactly.
struct FamilySpec {
  enum class Pattern { CoefPowers, Hamiltonian };
  Pattern pattern = Pattern::CoefPowers;
  std::string label;

  // CoefPowers: fields mono(function_of) * d/d(direction), degrees 0..k+1.
  std::vector<VarId> function_of;
  VarId direction;

  // Hamiltonian (n = 2): X_F = F_y d/dx - F_x d/dy for F a monomial of degree
  // min_degree..k+1 in the two base variables.
  int min_degree = 0;
};

std::vector<PointVectorField> instantiate_family(const FamilySpec& fam, int k,
                                                 const JetContext& ctx);

struct LieAlgebraSpec {
  std::vector<PointVectorField> fields;
  std::vector<FamilySpec> families;
};

/// Declared fields plus all family instantiations at truncation order k.
std::vector<PointVectorField> instantiate_algebra(const LieAlgebraSpec& g, int k,
                                                  const JetContext& ctx);

struct InvarianceWitness {
  std::string generator;
  RatFun residue;
};

struct InvarianceOutcome {
  bool invariant = false;
  std::optional<InvarianceWitness> witness;  // first failing generator
};

/// True iff reduce(L_{X^(k)}(f)) == 0 for every instantiated generator; the
/// witness carries the first nonzero residue in declaration order.
InvarianceOutcome is_invariant(const LieAlgebraSpec& g, const RatFun& f,
                               const SolvedEquation* eq, int k, const JetContext& ctx);

/// Rational candidate shape: P / denominator with P a polynomial of total
/// degree <= degree + deg(denominator) in the eligible coordinates of order
/// <= order. `variables`, when set, restricts the numerator coordinates.
struct Ansatz {
  int order = 1;
  int degree = 1;
  RatFun denominator = RatFun::one();  // must be polynomial
  std::optional<std::vector<VarId>> variables;
};

/// Exact kernel of the linear invariance conditions over the ansatz
/// coefficients. Deterministic reduced-echelon basis over the enumerated
/// monomial basis; every element passes is_invariant.
std::vector<RatFun> find_invariants_linear(const LieAlgebraSpec& g, const Ansatz& ansatz,
                                           const SolvedEquation* eq, const JetContext& ctx);

/// Derivation in total derivatives: apply(f) = sum_i coeffs[i] * D_i(f).
struct Derivation {
  std::string name;
  std::vector<RatFun> coeffs;  // n components
  std::string modulo;          // optional class annotation, informational
};

/// Tresse derivatives dual to n chosen functions: derivations with
/// d^_i(f_j) = delta_ij, pairwise commuting. DegenerateJacobian when
/// det |D_i(f_j)| vanishes identically (after reduction when a table is
/// attached).
std::vector<Derivation> tresse_derivatives(const std::vector<RatFun>& fs, const JetContext& ctx,
                                           const ReductionTable* table = nullptr);

RatFun apply_derivation(const Derivation& d, const RatFun& f, const JetContext& ctx,
                        const ReductionTable* table = nullptr);

struct DerivationCheck {
  bool ok = false;
  std::string detail;  // failing probe and generator when !ok
};

/// Probe contract: nabla maps each given invariant to an invariant of order
/// +1. Probes must pass is_invariant beforehand.
DerivationCheck verify_invariant_derivation(const Derivation& nabla, const LieAlgebraSpec& g,
                                            const std::vector<RatFun>& probes,
                                            const SolvedEquation* eq, int k,
                                            const JetContext& ctx);

/// [a, b] = sum_i (a(b_i) - b(a_i)) D_i (total derivatives commute).
Derivation commutator(const Derivation& a, const Derivation& b, const JetContext& ctx,
                      const ReductionTable* table = nullptr);

/// Exact coefficients of target in the span of the basis over the RatFun
/// field, reduced on the table; nullopt when not in the span.
std::optional<std::vector<RatFun>> decompose_commutator(const Derivation& target,
                                                        const std::vector<Derivation>& basis,
                                                        const JetContext& ctx,
                                                        const ReductionTable* table = nullptr);

/// True iff reduce(D_i(f)) == 0 for all i on a sufficiently prolonged table.
bool check_first_integral(const RatFun& f, const SolvedEquation& eq, const JetContext& ctx);

}  // namespace jetvariant
