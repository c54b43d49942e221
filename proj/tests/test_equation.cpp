#include <doctest.h>

#include "gen.hpp"
#include "jetvariant/equation.hpp"
#include "jetvariant/parser.hpp"

using namespace jetvariant;
using testgen::Rng;

namespace {

JetContext gas_ctx() {
  return JetContext({"x", "y"}, {"w"}, {{"w", 0, 1, AliasSpec::Style::Underscore}});
}

JetContext monge_ctx() {
  return JetContext({"x"}, {"y"}, {{"y", 0, 0, AliasSpec::Style::Suffix}});
}

RatFun rf(const JetContext& ctx, const std::string& s) { return parse_ratfun(s, ctx); }

SolvedEquation gas_equation(const JetContext& g) {
  return SolvedEquation({{*g.resolve("w_x"), rf(g, "w*w_1")}}, g);
}

SolvedEquation monge_equation(const JetContext& c) {
  return SolvedEquation({{*c.resolve("y5"), rf(c, "(5*y2*y3*y4 - 40/9*y3^3)/y2^2")}}, c);
}

}  // namespace

TEST_CASE("gas dynamics prolongation table") {
  JetContext g = gas_ctx();
  SolvedEquation eq = gas_equation(g);
  ReductionTable t = prolong_equation(eq, 2, g);

  CHECK(t.find(*g.resolve("w_xy")) != nullptr);
  CHECK(t.find(*g.resolve("w_xy"))->equals(rf(g, "w_1^2 + w*w_2")));
  CHECK(t.find(*g.resolve("w_xx"))->equals(rf(g, "2*w*w_1^2 + w^2*w_2")));
  CHECK(t.find(*g.resolve("w_2")) == nullptr);  // pure-y jets stay parametric

  // Constrained coordinates of order <= 2: w_x, w_xx, w_xy.
  CHECK(t.entries().size() == 3);
}

TEST_CASE("monge prolongation table") {
  JetContext c = monge_ctx();
  SolvedEquation eq = monge_equation(c);
  ReductionTable t = prolong_equation(eq, 6, c);

  CHECK(t.find(*c.resolve("y5"))->equals(rf(c, "(5*y2*y3*y4 - 40/9*y3^3)/y2^2")));

  // Independent oracle for the y6 entry: differentiate the rule by hand and
  // substitute the y5 rule into the result.
  RatFun rhs = rf(c, "(5*y2*y3*y4 - 40/9*y3^3)/y2^2");
  RatFun dx = total_derivative(rhs, 0, c);
  RatFun expected = dx.substitute({{*c.resolve("y5"), rhs}});
  CHECK(t.find(*c.resolve("y6"))->equals(expected));
}

TEST_CASE("empty equation gives empty table") {
  JetContext g = gas_ctx();
  SolvedEquation eq({}, g);
  ReductionTable t = prolong_equation(eq, 3, g);
  CHECK(t.entries().empty());
  RatFun f = rf(g, "w_xx + w_1");
  CHECK(reduce(f, t, g) == f);
}

TEST_CASE("reduce examples") {
  JetContext g = gas_ctx();
  ReductionTable t = prolong_equation(gas_equation(g), 3, g);

  CHECK(reduce(rf(g, "w_x - w*w_1"), t, g).is_zero());
  CHECK(reduce(rf(g, "w_xx * (1/w)"), t, g).equals(rf(g, "2*w_1^2 + w*w_2")));

  // First-integral property of the quadric invariants on the Monge table.
  JetContext c = monge_ctx();
  ReductionTable tm = prolong_equation(monge_equation(c), 6, c);
  RatFun j1 = rf(c, "(3*y2*y4 - 5*y3^2)^3/y2^8");
  CHECK(reduce(total_derivative(j1, 0, c), tm, c).is_zero());

  CHECK_THROWS_AS(reduce(rf(g, "u1_40"), prolong_equation(gas_equation(g), 3, g), g),
                  EngineError);  // OrderMismatch

  // DenominatorCollapse: 1/w_x on the zero-flow equation w_x = 0.
  SolvedEquation zero_eq({{*g.resolve("w_x"), RatFun::zero()}}, g);
  ReductionTable tz = prolong_equation(zero_eq, 2, g);
  try {
    reduce(rf(g, "1/w_x"), tz, g);
    CHECK(false);
  } catch (const EngineError& e) {
    CHECK(e.kind() == ErrorKind::DenominatorCollapse);
  }
}

TEST_CASE("is_symmetry examples") {
  JetContext g = gas_ctx();
  SolvedEquation eq = gas_equation(g);

  PointVectorField dx{"dx", {rf(g, "1"), rf(g, "0")}, {rf(g, "0")}};
  CHECK(is_symmetry(dx, eq, g));

  PointVectorField scale_w{"w*dw", {rf(g, "0"), rf(g, "0")}, {rf(g, "w")}};
  CHECK_FALSE(is_symmetry(scale_w, eq, g));

  PointVectorField sl3_a{"x*dx - w*dw", {rf(g, "x"), rf(g, "0")}, {rf(g, "-w")}};
  CHECK(is_symmetry(sl3_a, eq, g));
  PointVectorField sl3_b{"y*dx + w^2*dw", {rf(g, "y"), rf(g, "0")}, {rf(g, "w^2")}};
  CHECK(is_symmetry(sl3_b, eq, g));
  PointVectorField sl3_c{"big", {rf(g, "x*y"), rf(g, "y^2")}, {rf(g, "x*w^2 + y*w")}};
  CHECK(is_symmetry(sl3_c, eq, g));
}

TEST_CASE("orthonomic validation") {
  JetContext g = gas_ctx();

  // duplicate leads
  CHECK_THROWS_AS(SolvedEquation({{*g.resolve("w_x"), rf(g, "w")}, {*g.resolve("w_x"), rf(g, "0")}},
                                 g),
                  EngineError);
  // lead is a derivative of another lead
  CHECK_THROWS_AS(
      SolvedEquation({{*g.resolve("w_x"), rf(g, "w")}, {*g.resolve("w_xy"), rf(g, "0")}}, g),
      EngineError);
  // rhs contains a derivative of a lead
  CHECK_THROWS_AS(SolvedEquation({{*g.resolve("w_x"), rf(g, "w_xy")}}, g), EngineError);
  // rhs order above the lead order
  CHECK_THROWS_AS(SolvedEquation({{*g.resolve("w_x"), rf(g, "w_2")}}, g), EngineError);
  // lead must be a jet
  CHECK_THROWS_AS(SolvedEquation({{*g.resolve("x"), rf(g, "w")}}, g), EngineError);

  // Point-constraint relaxation: dependent and its first jets as leads.
  JetContext b({"x", "y"}, {"H"});
  SolvedEquation pt({{*b.resolve("H"), RatFun::zero()},
                     {*b.resolve("H_x"), RatFun::zero()},
                     {*b.resolve("H_y"), RatFun::zero()}},
                    b, true);
  ReductionTable t = prolong_equation(pt, 4, b);
  CHECK(t.constrains(*b.resolve("x")));
  CHECK(t.constrains(*b.resolve("H_x")));
  CHECK_FALSE(t.constrains(*b.resolve("H_xx")));
  CHECK(reduce(rf(b, "H_xx*H_yy - H_xy^2 + x + H_x*H_yy"), t, b)
            .equals(rf(b, "H_xx*H_yy - H_xy^2")));
}

TEST_CASE("inconsistent cross derivatives are detected") {
  JetContext g2({"x", "y"}, {"u"});
  // u_x = u, u_y = x*u: D_y(u) = x*u vs D_x(x*u) = u + x*u disagree at u_xy.
  SolvedEquation eq({{*g2.resolve("u_x"), rf(g2, "u")}, {*g2.resolve("u_y"), rf(g2, "x*u")}}, g2);
  CHECK_THROWS_AS(prolong_equation(eq, 2, g2), EngineError);
  try {
    prolong_equation(eq, 2, g2);
  } catch (const EngineError& e) {
    CHECK(e.kind() == ErrorKind::InconsistentSystem);
  }

  // A compatible pair closes fine: u_x = u, u_y = u.
  SolvedEquation ok({{*g2.resolve("u_x"), rf(g2, "u")}, {*g2.resolve("u_y"), rf(g2, "u")}}, g2);
  ReductionTable t = prolong_equation(ok, 3, g2);
  CHECK(t.find(*g2.resolve("u_xy"))->equals(rf(g2, "u")));
  CHECK(t.find(*g2.resolve("u_xxy"))->equals(rf(g2, "u")));
}

TEST_CASE("property: reduction is an idempotent ring homomorphism") {
  JetContext g = gas_ctx();
  ReductionTable t = prolong_equation(gas_equation(g), 3, g);
  std::vector<VarId> vars = {*g.resolve("x"),   *g.resolve("w"),   *g.resolve("w_1"),
                             *g.resolve("w_x"), *g.resolve("w_xy"), *g.resolve("w_2")};
  Rng rng(77);
  int done = 0;
  while (done < 100) {
    RatFun a = testgen::gen_ratfun(rng, vars);
    RatFun b = testgen::gen_ratfun(rng, vars);
    try {
      RatFun ra = reduce(a, t, g), rb = reduce(b, t, g);
      CHECK(reduce(ra, t, g) == ra);
      CHECK(reduce(a + b, t, g).equals(ra + rb));
      CHECK(reduce(a * b, t, g).equals(ra * rb));
      ++done;
    } catch (const EngineError& e) {
      if (e.kind() != ErrorKind::DenominatorCollapse) throw;
    }
  }
}

TEST_CASE("property: reduce commutes with the parametric direction") {
  JetContext g = gas_ctx();
  SolvedEquation eq = gas_equation(g);
  ReductionTable t3 = prolong_equation(eq, 3, g);
  ReductionTable t4 = prolong_equation(eq, 4, g);
  std::vector<VarId> vars = {*g.resolve("y"), *g.resolve("w"), *g.resolve("w_1"),
                             *g.resolve("w_x"), *g.resolve("w_2")};
  Rng rng(78);
  int done = 0;
  while (done < 100) {
    RatFun f = testgen::gen_ratfun(rng, vars);
    try {
      RatFun lhs = total_derivative(reduce(f, t3, g), 1, g);
      lhs = reduce(lhs, t4, g);
      RatFun rhs = reduce(total_derivative(f, 1, g), t4, g);
      CHECK(lhs.equals(rhs));
      ++done;
    } catch (const EngineError& e) {
      if (e.kind() != ErrorKind::DenominatorCollapse) throw;
    }
  }
}
