#include "jetvariant/equation.hpp"

#include <algorithm>

#include "jetvariant/error.hpp"
#include "jetvariant/parser.hpp"

namespace jetvariant {

namespace {

/// True when v is w or a total derivative of w (same dependent, sigma >=
/// componentwise).
bool derives_from(VarId v, VarId w) {
  if (!v.is_jet() || !w.is_jet()) return false;
  if (v.dep_index() != w.dep_index()) return false;
  return v.sigma().dominates(w.sigma());
}

}  // namespace

SolvedEquation::SolvedEquation(std::vector<SolvedRule> rules, const JetContext& ctx,
                               bool point_constraint)
    : rules_(std::move(rules)), point_constraint_(point_constraint) {
  for (const auto& r : rules_) {
    if (!r.lead.is_jet())
      fail(ErrorKind::OrthonomicityError, "lead must be a jet coordinate");
    max_order_ = std::max(max_order_, r.lead.order());
  }
  for (size_t a = 0; a < rules_.size(); ++a) {
    for (size_t b = 0; b < rules_.size(); ++b) {
      if (a == b) continue;
      if (rules_[a].lead == rules_[b].lead)
        fail(ErrorKind::OrthonomicityError,
             "duplicate lead " + rules_[a].lead.debug_name());
      if (!point_constraint_ && derives_from(rules_[a].lead, rules_[b].lead))
        fail(ErrorKind::OrthonomicityError,
             "lead " + rules_[a].lead.debug_name() + " is a total derivative of lead " +
                 rules_[b].lead.debug_name());
    }
  }
  for (const auto& r : rules_) {
    if (r.rhs.max_jet_order(ctx) > r.lead.order())
      fail(ErrorKind::OrthonomicityError,
           "right-hand side of " + r.lead.debug_name() + " exceeds the lead order");
    for (VarId v : r.rhs.support_vars(ctx)) {
      for (const auto& other : rules_) {
        bool hits = point_constraint_ ? v == other.lead : derives_from(v, other.lead);
        if (hits)
          fail(ErrorKind::OrthonomicityError,
               "right-hand side of " + r.lead.debug_name() + " contains constrained coordinate " +
                   v.debug_name());
      }
      if (point_constraint_ && v.is_independent())
        fail(ErrorKind::OrthonomicityError,
             "point-constraint right-hand sides cannot involve base variables");
    }
  }
}

ReductionTable prolong_equation(const SolvedEquation& eq, int k, const JetContext& ctx) {
  if (!eq.point_constraint() && k < eq.max_order())
    fail(ErrorKind::OrderMismatch, "prolongation order below the equation order");

  ReductionTable table;
  table.order_ = k;

  if (eq.point_constraint()) {
    for (int i = 0; i < ctx.n(); ++i) table.entries_[ctx.independent(i)] = RatFun::zero();
    for (const auto& r : eq.rules()) table.entries_[r.lead] = r.rhs;
    return table;
  }

  auto& entries = table.entries_;
  for (const auto& r : eq.rules()) entries[r.lead] = r.rhs;

  for (int L = eq.max_order() + 1; L <= k; ++L) {
    // Candidate derivations (parent entry, direction) for this level; the
    // same coordinate can be reached along several paths, and every path is
    // computed and cross-checked.
    struct Candidate {
      VarId target;
      VarId parent;
      int dir;
    };
    std::vector<Candidate> todo;
    for (const auto& [lead, rhs] : entries) {
      if (lead.order() != L - 1) continue;
      for (int dir = 0; dir < ctx.n(); ++dir)
        todo.push_back({ctx.jet(lead.dep_index(), lead.sigma().bumped(dir)), lead, dir});
    }

    bool progress = true;
    while (!todo.empty() && progress) {
      progress = false;
      std::vector<Candidate> deferred;
      for (const auto& c : todo) {
        RatFun derived = total_derivative(entries.at(c.parent), c.dir, ctx);
        // Normal-form the derivative: substitute the known entries; defer if
        // a constrained coordinate of this level is not yet available.
        std::map<VarId, RatFun> sub;
        bool ready = true;
        for (VarId v : derived.support_vars(ctx)) {
          if (auto* e = table.find(v)) {
            sub[v] = *e;
          } else {
            for (const auto& r : eq.rules())
              if (derives_from(v, r.lead)) ready = false;
          }
        }
        if (!ready) {
          deferred.push_back(c);
          continue;
        }
        RatFun normal;
        try {
          normal = derived.substitute(sub);
        } catch (const EngineError& e) {
          if (e.kind() == ErrorKind::DivisionByZero)
            fail(ErrorKind::DenominatorCollapse,
                 "denominator vanishes on the equation while prolonging " +
                     c.target.debug_name());
          throw;
        }
        auto it = entries.find(c.target);
        if (it == entries.end()) {
          entries.emplace(c.target, std::move(normal));
        } else if (!it->second.equals(normal)) {
          fail(ErrorKind::InconsistentSystem,
               "cross-derivative clash at " + c.target.debug_name() +
                   "; the system is not formally integrable in this chart");
        }
        progress = true;
      }
      todo = std::move(deferred);
    }
    if (!todo.empty())
      fail(ErrorKind::InconsistentSystem,
           "prolongation closure stalled at order " + std::to_string(L));
  }
  return table;
}

RatFun reduce(const RatFun& f, const ReductionTable& table, const JetContext& ctx) {
  if (f.max_jet_order(ctx) > table.order())
    fail(ErrorKind::OrderMismatch, "expression order exceeds the reduction table order");
  std::map<VarId, RatFun> sub;
  for (VarId v : f.support_vars(ctx))
    if (auto* e = table.find(v)) sub[v] = *e;
  if (sub.empty()) return f;
  try {
    return f.substitute(sub);
  } catch (const EngineError& e) {
    if (e.kind() == ErrorKind::DivisionByZero)
      fail(ErrorKind::DenominatorCollapse,
           "denominator reduces to zero; the expression is not defined on the equation");
    throw;
  }
}

bool is_symmetry(const PointVectorField& X, const SolvedEquation& eq, const JetContext& ctx) {
  if (eq.empty()) return true;
  int l = eq.max_order();
  ReductionTable table = prolong_equation(eq, l + 1, ctx);
  ProlongedVectorField Xp = prolong_field(X, l, ctx);
  for (const auto& r : eq.rules()) {
    RatFun residue = lie_derivative(Xp, RatFun::variable(r.lead) - r.rhs, ctx);
    if (!reduce(residue, table, ctx).is_zero()) return false;
  }
  return true;
}

}  // namespace jetvariant
