#pragma once

#include <map>
#include <vector>

#include "jetvariant/prolong.hpp"

namespace jetvariant {

struct SolvedRule {
  VarId lead;  // jet coordinate u^j_sigma
  RatFun rhs;  // normal form: no lead, no derivative of a lead, order <= |sigma|
};

/// Orthonomic system of solved rules. When point_constraint is set the rules
/// describe jets at one fixed base point (a zero-dimensional chart): rules are
/// not differentiated and the independent variables are pinned to 0, so leads
/// may include the dependent variables and their first derivatives.
class SolvedEquation {
 public:
  SolvedEquation(std::vector<SolvedRule> rules, const JetContext& ctx,
                 bool point_constraint = false);

  const std::vector<SolvedRule>& rules() const { return rules_; }
  bool point_constraint() const { return point_constraint_; }
  int max_order() const { return max_order_; }
  bool empty() const { return rules_.empty(); }

 private:
  std::vector<SolvedRule> rules_;
  bool point_constraint_ = false;
  int max_order_ = 0;
};

/// Normal forms for every constrained coordinate up to the table order.
/// Entries are closed under the rules: each right-hand side involves only
/// parametric coordinates, so substitution is idempotent.
class ReductionTable {
 public:
  int order() const { return order_; }
  bool constrains(VarId v) const { return entries_.count(v) != 0; }
  const std::map<VarId, RatFun>& entries() const { return entries_; }
  const RatFun* find(VarId v) const {
    auto it = entries_.find(v);
    return it == entries_.end() ? nullptr : &it->second;
  }

 private:
  friend ReductionTable prolong_equation(const SolvedEquation&, int, const JetContext&);
  int order_ = 0;
  std::map<VarId, RatFun> entries_;
};

/// Differentiated closure of the rules up to order k: every derivative of a
/// lead maps to the full normal form of the derived right-hand side.
/// InconsistentSystem when two derivation paths force different normal forms.
ReductionTable prolong_equation(const SolvedEquation& eq, int k, const JetContext& ctx);

/// Substitutes normal forms; the result involves no constrained coordinate.
/// OrderMismatch if f exceeds the table order; DenominatorCollapse when a
/// denominator reduces to the zero polynomial.
RatFun reduce(const RatFun& f, const ReductionTable& table, const JetContext& ctx);

/// Tangency test: for every rule, reduce(L_{X^(l)}(lead - rhs)) == 0 with the
/// table taken at order l+1.
bool is_symmetry(const PointVectorField& X, const SolvedEquation& eq, const JetContext& ctx);

}  // namespace jetvariant
