#pragma once

#include <map>
#include <string>
#include <vector>

#include "jetvariant/jet.hpp"

namespace jetvariant {

/// Vector field on the base space: sum_i alpha^i d/dx^i + sum_j beta^j d/du^j.
/// Coefficients live in the (x, u) variables only (no jets of order >= 1).
struct PointVectorField {
  std::string name;
  std::vector<RatFun> alpha;  // n components
  std::vector<RatFun> beta;   // m components

  void validate(const JetContext& ctx) const;
};

/// phi^j = beta^j - sum_i u^j_{1_i} alpha^i.
struct GeneratingSection {
  std::vector<RatFun> phi;
};

GeneratingSection generating_function(const PointVectorField& X, const JetContext& ctx);

/// Contact-preserving lift of a point vector field to jets of order <= k.
/// The coefficient at u^j_sigma depends only on jets of order <= |sigma|.
class ProlongedVectorField {
 public:
  int order() const { return order_; }
  const std::string& name() const { return name_; }
  const RatFun& base_coefficient(int dir) const { return base_[static_cast<size_t>(dir)]; }
  const RatFun& jet_coefficient(VarId v) const;
  const std::map<VarId, RatFun>& jet_coefficients() const { return jets_; }

  /// Generic coefficient lookup: independents give alpha^i, jets eta^j_sigma.
  const RatFun& coefficient(VarId v) const;

 private:
  friend ProlongedVectorField prolong_field(const PointVectorField&, int, const JetContext&);
  std::string name_;
  int order_ = 0;
  std::vector<RatFun> base_;
  std::map<VarId, RatFun> jets_;
};

/// Recursion eta^j_{sigma+1_i} = D_i(eta^j_sigma) - sum_s u^j_{sigma+1_s} D_i(alpha^s),
/// seeded with eta^j_0 = beta^j; agrees with D_sigma(phi^j) + sum_i alpha^i u^j_{sigma+1_i}.
ProlongedVectorField prolong_field(const PointVectorField& X, int k, const JetContext& ctx);

/// L_X(f) = sum over coordinates of coefficient * partial. OrderMismatch if f
/// involves jets above the prolongation order.
RatFun lie_derivative(const ProlongedVectorField& X, const RatFun& f, const JetContext& ctx);

/// Point transformation x -> X_new(x,u), u -> U_new(x,u) together with its
/// prolonged coordinate images up to the requested order.
struct PointMap {
  std::vector<RatFun> x_new;  // n
  std::vector<RatFun> u_new;  // m
  int order = 0;
  std::map<VarId, RatFun> images;  // jets |sigma| <= order, including sigma = 0

  /// f composed with the prolonged map: substitutes coordinate images.
  RatFun pullback(const RatFun& f, const JetContext& ctx) const;
};

/// Lifts the map by solving, for each sigma, the linear system
///   sum_i image(u^j_{sigma+1_i}) D_s(X_new^i) = D_s(image(u^j_sigma)), s = 1..n.
/// SingularJacobian when det |D_s(X_new^i)| vanishes identically.
PointMap prolong_point_map(const std::vector<RatFun>& x_new, const std::vector<RatFun>& u_new,
                           int k, const JetContext& ctx);

}  // namespace jetvariant
