#include <gtest/gtest.h>

#include <set>
#include <string>

#include "gatc/poly.hpp"
#include "gatc/stdlib.hpp"
#include "gatc/syntax.hpp"

using namespace gatc;

namespace {

TheoryPtr lib(const std::string& name) { return share(stdlib_theory(name)); }

std::vector<TheoryPtr> default_samples() {
  return {detail::ty_theory(-1), ty0(), el0(), lib("Mon"), lib("Cat")};
}

}  // namespace

TEST(Poly, HypothesizedTheoryShape) {
  PolyTheory p = poly_apply(lib("Mon"));
  ASSERT_EQ(p.theory->size(), lib("Mon")->size() + 1);
  EXPECT_EQ((*p.theory)[0].name, "A0");
  const Declaration* mul = p.theory->find("mul");
  ASSERT_NE(mul, nullptr);
  ASSERT_EQ(mul->ctx.size(), 3u);
  EXPECT_EQ(mul->ctx[0].type, Expr::app("A0"));
  EXPECT_EQ(mul->type, Expr::app("Mon", {Expr::var("x0")}));
}

TEST(Poly, ReservedNameIsPrimed) {
  PolyTheory p = poly_apply(ty0());
  EXPECT_EQ(p.name_of("A0"), "A0'");
  EXPECT_EQ(p.theory->size(), 2u);
}

TEST(Poly, FunctorOnArrowsPreservesValidity) {
  Interpretation carrier{"Carrier", ty0(), lib("Mon"), {{"A0", SymbolImage{{}, Expr::app("Mon")}}}};
  PolyTheory pt = poly_apply(ty0());
  PolyTheory pm = poly_apply(lib("Mon"));
  Interpretation pc = poly_map(carrier, pt, pm);
  EXPECT_TRUE(check_interpretation(pc).ok());
  EXPECT_TRUE(equivalent(poly_map(identity(lib("Mon")), pm, pm), identity(pm.theory)).ok());
}

TEST(Poly, StructureArrowsAreValid) {
  for (const auto& g : default_samples()) {
    SCOPED_TRACE(g->name());
    PolyContext px(g, {}, {});
    EXPECT_TRUE(check_interpretation(px.wk).ok());
    EXPECT_TRUE(check_interpretation(px.subst).ok());
    EXPECT_TRUE(check_interpretation(px.pg.leg).ok());
  }
  EXPECT_TRUE(check_interpretation(proj_arrow(poly_apply(el0()))).ok());
}

TEST(Poly, AxiomsHoldWithoutEquationalReasoning) {
  auto checks = verify_polynomial_axioms(default_samples());
  ASSERT_EQ(checks.size(), 2u + 2u * 5u);
  for (const auto& c : checks) {
    SCOPED_TRACE(c.axiom + "[" + c.sample + "]");
    EXPECT_EQ(c.status, Status::Proved) << c.note;
    if (c.axiom != "P1") {
      EXPECT_EQ(c.axiom_instances, 0u);
    }
  }
}

TEST(Poly, CorruptedSubstFailsP2) {
  auto checks = verify_polynomial_axioms({}, {}, {}, Mutation::Subst);
  ASSERT_EQ(checks.size(), 2u);
  EXPECT_EQ(checks[0].status, Status::Proved);
  EXPECT_EQ(checks[1].axiom, "P2");
  EXPECT_EQ(checks[1].status, Status::Failed);
}

TEST(Poly, IteratesTyAndEl) {
  for (int n = 0; n <= 2; ++n) {
    IsoCheck t = check_poly_iso(detail::ty_theory(n), detail::ty_theory(n + 1));
    IsoCheck e = check_poly_iso(detail::el_theory(static_cast<std::size_t>(n)), detail::el_theory(static_cast<std::size_t>(n) + 1));
    EXPECT_EQ(t.status, Status::Proved) << t.label;
    EXPECT_EQ(e.status, Status::Proved) << e.label;
    EXPECT_TRUE(t.inverse.ok());
    EXPECT_TRUE(e.inverse.ok());
  }
}

TEST(Poly, UnitEquationsAndTriangles) {
  const TheoryPtr mon = lib("Mon");
  const Coproduct mxb = coproduct(mon, ty0());
  const std::vector<std::tuple<std::string, TheoryPtr, Interpretation>> instances = {
      {"Ty0 id", ty0(), identity(ty0())},
      {"Mon x Ty0", mon, mxb.inr},
      {"El0 p", ty0(), el0_leg()},
  };
  for (const auto& [label, base, leg] : instances) {
    SCOPED_TRACE(label);
    for (const auto& c : check_unit_equations(leg, label)) EXPECT_EQ(c.status, Status::Proved) << c.axiom << c.note;
    for (const auto& c : check_triangles(base, leg, label)) EXPECT_EQ(c.status, Status::Proved) << c.axiom << c.note;
  }
  for (const auto& g : {ty0(), mon, el0()})
    for (const auto& c : check_recovery(g)) EXPECT_EQ(c.status, Status::Proved) << c.axiom << c.note;
}

TEST(Poly, DerivedUnitIsValid) {
  Unit u = derive_unit(identity(ty0()));
  EXPECT_TRUE(check_interpretation(u.eta).ok());
  Unit v = derive_unit(el0_leg());
  EXPECT_TRUE(check_interpretation(v.eta).ok());
}

TEST(PiSquare, CommutesAndIsAPullback) {
  PiSquare s = pi_square();
  std::set<Rule> used;
  for (const auto& c : s.checks) {
    SCOPED_TRACE(c.axiom);
    EXPECT_EQ(c.status, Status::Proved) << c.note;
    EXPECT_EQ(c.axiom_instances, 0u);
    if (c.axiom.rfind("round-trip", 0) == 0) used.insert(c.rules_used.begin(), c.rules_used.end());
  }
  EXPECT_TRUE(used.count(Rule::Beta));
  EXPECT_TRUE(used.count(Rule::Eta));
  EXPECT_FALSE(used.count(Rule::Axiom));
}

TEST(PiSquare, NeedsBetaAndEta) {
  PiSquare s = pi_square();
  // Without the Pi rules the round trips cannot be closed.
  CheckReport r = equivalent(compose(s.inverse, s.comparison), identity(detail::el_theory(1)), RuleSet::base());
  EXPECT_FALSE(r.ok());
}
