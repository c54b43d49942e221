#include <doctest.h>

#include "gen.hpp"
#include "jetvariant/parser.hpp"
#include "jetvariant/prolong.hpp"

using namespace jetvariant;
using testgen::Rng;

namespace {

JetContext curves_ctx() {
  return JetContext({"x"}, {"y"}, {{"y", 0, 0, AliasSpec::Style::Suffix}});
}

RatFun rf(const JetContext& ctx, const std::string& s) { return parse_ratfun(s, ctx); }

PointVectorField field(const JetContext& ctx, const std::string& name,
                       const std::vector<std::string>& alpha,
                       const std::vector<std::string>& beta) {
  PointVectorField X;
  X.name = name;
  for (const auto& s : alpha) X.alpha.push_back(rf(ctx, s));
  for (const auto& s : beta) X.beta.push_back(rf(ctx, s));
  return X;
}

PointVectorField rotation(const JetContext& c) { return field(c, "rot", {"-y"}, {"x"}); }

}  // namespace

TEST_CASE("generating function examples") {
  JetContext c = curves_ctx();
  auto phi_dx = generating_function(field(c, "dx", {"1"}, {"0"}), c);
  CHECK(phi_dx.phi[0].equals(rf(c, "-y1")));

  auto phi_du = generating_function(field(c, "dy", {"0"}, {"1"}), c);
  CHECK(phi_du.phi[0].equals(RatFun::one()));

  auto phi_rot = generating_function(rotation(c), c);
  CHECK(phi_rot.phi[0].equals(rf(c, "x + y*y1")));
}

TEST_CASE("prolong_field examples") {
  JetContext c = curves_ctx();
  auto dx4 = prolong_field(field(c, "dx", {"1"}, {"0"}), 4, c);
  for (const auto& [v, coeff] : dx4.jet_coefficients()) CHECK(coeff.is_zero());

  auto rot2 = prolong_field(rotation(c), 2, c);
  CHECK(rot2.jet_coefficient(*c.resolve("y1")).equals(rf(c, "1 + y1^2")));
  CHECK(rot2.jet_coefficient(*c.resolve("y2")).equals(rf(c, "3*y1*y2")));
}

TEST_CASE("lie_derivative examples") {
  JetContext c = curves_ctx();
  auto dx2 = prolong_field(field(c, "dx", {"1"}, {"0"}), 2, c);
  CHECK(lie_derivative(dx2, rf(c, "y2"), c).is_zero());

  auto rot1 = prolong_field(rotation(c), 1, c);
  CHECK(lie_derivative(rot1, rf(c, "y1"), c).equals(rf(c, "1 + y1^2")));

  auto rot2 = prolong_field(rotation(c), 2, c);
  CHECK(lie_derivative(rot2, rf(c, "y2^2/(1+y1^2)^3"), c).is_zero());

  CHECK_THROWS_AS(lie_derivative(rot1, rf(c, "y3"), c), EngineError);
}

TEST_CASE("prolong_point_map examples") {
  JetContext c = curves_ctx();

  PointMap ident = prolong_point_map({rf(c, "x")}, {rf(c, "y")}, 3, c);
  for (const auto& [v, img] : ident.images) CHECK(img.equals(RatFun::variable(v)));

  PointMap refl = prolong_point_map({rf(c, "-x")}, {rf(c, "-y")}, 2, c);
  CHECK(refl.images.at(*c.resolve("y1")).equals(rf(c, "y1")));
  CHECK(refl.images.at(*c.resolve("y2")).equals(rf(c, "-y2")));

  PointMap scale = prolong_point_map({rf(c, "2*x")}, {rf(c, "2*y")}, 2, c);
  CHECK(scale.images.at(*c.resolve("y1")).equals(rf(c, "y1")));
  CHECK(scale.images.at(*c.resolve("y2")).equals(rf(c, "y2/2")));

  // Singular horizontal Jacobian: collapses the base direction.
  CHECK_THROWS_AS(prolong_point_map({rf(c, "1")}, {rf(c, "y")}, 1, c), EngineError);

  JetContext g2({"x", "y"}, {"u"});
  PointMap swap = prolong_point_map({rf(g2, "y"), rf(g2, "x")}, {rf(g2, "u1_00")}, 2, g2);
  CHECK(swap.images.at(*g2.resolve("u1_10")).equals(rf(g2, "u1_01")));
  CHECK(swap.images.at(*g2.resolve("u1_01")).equals(rf(g2, "u1_10")));
  CHECK(swap.images.at(*g2.resolve("u1_11")).equals(rf(g2, "u1_11")));
  CHECK(swap.images.at(*g2.resolve("u1_20")).equals(rf(g2, "u1_02")));
}

TEST_CASE("curvature flips under reflection while its square is fixed") {
  JetContext c = curves_ctx();
  PointMap refl = prolong_point_map({rf(c, "-x")}, {rf(c, "-y")}, 2, c);
  RatFun k2 = rf(c, "y2^2/(1+y1^2)^3");

  // Finite check: K^2 is preserved, the curvature numerator y2 flips sign
  // and the denominator base 1+y1^2 is preserved, so K itself maps to -K.
  CHECK(refl.pullback(k2, c).equals(k2));
  CHECK(refl.pullback(rf(c, "y2"), c).equals(rf(c, "-y2")));
  CHECK(refl.pullback(rf(c, "1+y1^2"), c).equals(rf(c, "1+y1^2")));
  CHECK_FALSE(refl.pullback(rf(c, "y2"), c).equals(rf(c, "y2")));

  // Infinitesimal check: K^2 is annihilated by the full proper-motion algebra.
  for (const auto& X : {field(c, "dx", {"1"}, {"0"}), field(c, "dy", {"0"}, {"1"}), rotation(c)}) {
    auto Xp = prolong_field(X, 2, c);
    CHECK(lie_derivative(Xp, k2, c).is_zero());
  }
}

TEST_CASE("property: prolonged coefficients are order-local") {
  JetContext c = curves_ctx();
  JetContext g2({"x", "y"}, {"u"});
  Rng rng(55);
  std::vector<VarId> base_c = {*c.resolve("x"), *c.resolve("y")};
  std::vector<VarId> base_g = {*g2.resolve("x"), *g2.resolve("y"), *g2.resolve("u1_00")};
  for (int i = 0; i < 40; ++i) {
    PointVectorField X;
    X.name = "rand";
    X.alpha = {RatFun(testgen::gen_poly(rng, base_c, 3, 2))};
    X.beta = {RatFun(testgen::gen_poly(rng, base_c, 3, 2))};
    auto Xp = prolong_field(X, 4, c);
    for (const auto& [v, coeff] : Xp.jet_coefficients())
      CHECK(coeff.max_jet_order(c) <= v.order());

    PointVectorField Y;
    Y.name = "rand2";
    Y.alpha = {RatFun(testgen::gen_poly(rng, base_g, 3, 1)),
               RatFun(testgen::gen_poly(rng, base_g, 3, 1))};
    Y.beta = {RatFun(testgen::gen_poly(rng, base_g, 3, 1))};
    auto Yp = prolong_field(Y, 3, g2);
    for (const auto& [v, coeff] : Yp.jet_coefficients())
      CHECK(coeff.max_jet_order(g2) <= v.order());
  }
}

TEST_CASE("property: recursion agrees with the generating-function formula") {
  JetContext g2({"x", "y"}, {"u"});
  Rng rng(56);
  std::vector<VarId> base = {*g2.resolve("x"), *g2.resolve("y"), *g2.resolve("u1_00")};
  for (int i = 0; i < 25; ++i) {
    PointVectorField X;
    X.name = "rand";
    X.alpha = {RatFun(testgen::gen_poly(rng, base, 3, 1)),
               RatFun(testgen::gen_poly(rng, base, 3, 1))};
    X.beta = {RatFun(testgen::gen_poly(rng, base, 3, 1))};
    auto Xp = prolong_field(X, 3, g2);
    auto phi = generating_function(X, g2);
    for (const auto& [v, coeff] : Xp.jet_coefficients()) {
      MultiIndex sigma = v.sigma();
      RatFun expected = total_derivative_multi(phi.phi[0], sigma, g2);
      for (int dir = 0; dir < 2; ++dir)
        expected += X.alpha[static_cast<size_t>(dir)] *
                    RatFun::variable(g2.jet(0, sigma.bumped(dir)));
      CHECK(coeff.equals(expected));
    }
  }
}

TEST_CASE("property: prolongation is linear in the field") {
  JetContext c = curves_ctx();
  Rng rng(57);
  std::vector<VarId> base = {*c.resolve("x"), *c.resolve("y")};
  for (int i = 0; i < 25; ++i) {
    PointVectorField X, Y, Z;
    X.alpha = {RatFun(testgen::gen_poly(rng, base, 3, 2))};
    X.beta = {RatFun(testgen::gen_poly(rng, base, 3, 2))};
    Y.alpha = {RatFun(testgen::gen_poly(rng, base, 3, 2))};
    Y.beta = {RatFun(testgen::gen_poly(rng, base, 3, 2))};
    Rational a = testgen::gen_rational(rng, 4), b = testgen::gen_rational(rng, 4);
    Z.alpha = {X.alpha[0].times_coeff(a) + Y.alpha[0].times_coeff(b)};
    Z.beta = {X.beta[0].times_coeff(a) + Y.beta[0].times_coeff(b)};
    auto Xp = prolong_field(X, 3, c), Yp = prolong_field(Y, 3, c), Zp = prolong_field(Z, 3, c);
    for (const auto& [v, coeff] : Zp.jet_coefficients())
      CHECK(coeff.equals(Xp.jet_coefficient(v).times_coeff(a) +
                         Yp.jet_coefficient(v).times_coeff(b)));
  }
}

TEST_CASE("point map prolongation is functorial on the corpus maps") {
  JetContext c = curves_ctx();
  PointMap refl = prolong_point_map({rf(c, "-x")}, {rf(c, "-y")}, 3, c);
  PointMap scale = prolong_point_map({rf(c, "2*x")}, {rf(c, "2*y")}, 3, c);
  // compose: first scale, then reflect
  std::map<VarId, RatFun> none;
  PointMap composed =
      prolong_point_map({scale.pullback(refl.x_new[0], c)}, {scale.pullback(refl.u_new[0], c)},
                        3, c);
  for (const auto& [v, img] : composed.images)
    CHECK(img.equals(scale.pullback(refl.images.at(v), c)));
}
