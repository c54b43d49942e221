#include <doctest.h>

#include "gen.hpp"
#include "jetvariant/jet.hpp"
#include "jetvariant/parser.hpp"

using namespace jetvariant;
using testgen::Rng;

namespace {

JetContext curves_ctx() {
  return JetContext({"x"}, {"y"}, {{"y", 0, 0, AliasSpec::Style::Suffix}});
}

JetContext gas_ctx() {
  return JetContext({"x", "y"}, {"w"}, {{"w", 0, 1, AliasSpec::Style::Underscore}});
}

RatFun rf(const JetContext& ctx, const std::string& s) { return parse_ratfun(s, ctx); }

}  // namespace

TEST_CASE("total derivative examples") {
  JetContext c = curves_ctx();
  CHECK(total_derivative(rf(c, "y1"), 0, c).equals(rf(c, "y2")));
  CHECK(total_derivative(rf(c, "x*y2"), 0, c).equals(rf(c, "y2 + x*y3")));

  JetContext g = gas_ctx();
  CHECK(total_derivative(rf(g, "w*w_1"), 1, g).equals(rf(g, "w_1^2 + w*w_2")));
}

TEST_CASE("iterated total derivative examples") {
  JetContext c = curves_ctx();
  RatFun f = rf(c, "x*y1^2/(1+y2)");
  CHECK(total_derivative_multi(f, MultiIndex{0}, c) == f);
  CHECK(total_derivative_multi(rf(c, "y1"), MultiIndex{2}, c).equals(rf(c, "y3")));

  JetContext g2({"x", "y"}, {"u"});
  CHECK(total_derivative_multi(rf(g2, "u1_00"), MultiIndex{1, 1}, g2).equals(rf(g2, "u1_11")));
}

TEST_CASE("horizontal differential examples") {
  JetContext c = curves_ctx();
  auto hd_x = horizontal_differential(rf(c, "x"), c);
  REQUIRE(hd_x.components.size() == 1);
  CHECK(hd_x.components[0].equals(RatFun::one()));

  JetContext g2({"x", "y"}, {"u"});
  auto hd_u = horizontal_differential(rf(g2, "u1_00"), g2);
  REQUIRE(hd_u.components.size() == 2);
  CHECK(hd_u.components[0].equals(rf(g2, "u1_10")));
  CHECK(hd_u.components[1].equals(rf(g2, "u1_01")));

  auto hd_k2 = horizontal_differential(rf(c, "y2^2/(1+y1^2)^3"), c);
  CHECK(hd_k2.components[0].equals(
      rf(c, "2*y2*y3/(1+y1^2)^3 - 6*y1*y2^3/(1+y1^2)^4")));
}

TEST_CASE("fiber dimension examples and enumeration consistency") {
  JetContext c1({"x"}, {"y"});
  CHECK(c1.fiber_dimension(5) == 1);
  JetContext c2({"x", "y"}, {"u"});
  CHECK(c2.fiber_dimension(2) == 3);
  CHECK(c2.fiber_dimension(6) == 7);

  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 2; ++m) {
      std::vector<std::string> xs, us;
      for (int i = 0; i < n; ++i) xs.push_back("x" + std::to_string(i + 1));
      for (int j = 0; j < m; ++j) us.push_back("q" + std::to_string(j + 1));
      JetContext ctx(xs, us);
      for (int k = 1; k <= 4; ++k) {
        long count = 0;
        for (VarId v : ctx.coordinates(k))
          if (v.is_jet() && v.order() == k) ++count;
        CHECK(count == ctx.fiber_dimension(k));
      }
    }
  }
}

TEST_CASE("property: total derivatives commute") {
  JetContext g2({"x", "y"}, {"u"});
  std::vector<VarId> vars = {*g2.resolve("x"), *g2.resolve("y"), *g2.resolve("u1_00"),
                             *g2.resolve("u1_10"), *g2.resolve("u1_01")};
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    RatFun f = testgen::gen_ratfun(rng, vars);
    RatFun dxy = total_derivative(total_derivative(f, 0, g2), 1, g2);
    RatFun dyx = total_derivative(total_derivative(f, 1, g2), 0, g2);
    CHECK(dxy.equals(dyx));
  }
}

TEST_CASE("property: order bump") {
  JetContext c = curves_ctx();
  std::vector<VarId> vars = {*c.resolve("x"), *c.resolve("y"), *c.resolve("y1"),
                             *c.resolve("y2")};
  Rng rng(32);
  for (int i = 0; i < 100; ++i) {
    RatFun f = testgen::gen_ratfun(rng, vars);
    if (f.is_zero()) continue;
    int before = f.max_jet_order(c);
    RatFun df = total_derivative(f, 0, c);
    int after = df.is_zero() ? 0 : df.max_jet_order(c);
    CHECK(after <= before + 1);
    // Equality holds exactly when f genuinely depends on an order-`before` jet.
    bool depends_on_top = false;
    for (VarId v : f.support_vars(c))
      depends_on_top |= v.is_jet() && v.order() == before && !f.partial(v).is_zero();
    if (depends_on_top)
      CHECK(after == before + 1);
    else
      CHECK(after <= before);
  }
}

TEST_CASE("property: Leibniz for total derivative") {
  JetContext g = gas_ctx();
  std::vector<VarId> vars = {*g.resolve("x"), *g.resolve("w"), *g.resolve("w_1"),
                             *g.resolve("w_x")};
  Rng rng(33);
  for (int i = 0; i < 100; ++i) {
    RatFun a = testgen::gen_ratfun(rng, vars);
    RatFun b = testgen::gen_ratfun(rng, vars);
    int dir = static_cast<int>(rng.range(0, 1));
    CHECK(total_derivative(a * b, dir, g)
              .equals(total_derivative(a, dir, g) * b + a * total_derivative(b, dir, g)));
  }
}
