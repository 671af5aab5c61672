#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

#include "gatc/check.hpp"
#include "gatc/gatcat.hpp"
#include "gatc/poly.hpp"
#include "gatc/stdlib.hpp"
#include "gatc/syntax.hpp"

using namespace gatc;

namespace {

Expr v(const std::string& n) { return Expr::var(n); }
Expr a(const std::string& f, std::vector<Expr> xs = {}) { return Expr::app(f, std::move(xs)); }

Pretheory parse_theory(const std::string& text) { return parse(text, stdlib_lookup).theories.front().pre; }

Expr word(std::mt19937& rng, int depth, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(vars.size()) + 1);
  int k = d(rng);
  if (depth == 0 && k == static_cast<int>(vars.size()) + 1) k = 0;
  if (k == static_cast<int>(vars.size())) return a("u");
  if (k < static_cast<int>(vars.size())) return v(vars[static_cast<std::size_t>(k)]);
  return a("mul", {word(rng, depth - 1, vars), word(rng, depth - 1, vars)});
}

Context mon_ctx(const std::vector<std::string>& vars) {
  Context c;
  for (const auto& x : vars) c.push_back({x, a("Mon")});
  return c;
}

// Pairs of monoid words the checker derives equal.
std::vector<std::pair<Expr, Expr>> derivable_mon_equations(unsigned seed, int want) {
  const Theory& mon = stdlib_theory("Mon");
  const std::vector<std::string> vars = {"p", "q", "r"};
  std::mt19937 rng(seed);
  std::vector<std::pair<Expr, Expr>> out;
  for (int tries = 0; tries < 5000 && static_cast<int>(out.size()) < want; ++tries) {
    Expr l = word(rng, 3, vars), r = word(rng, 3, vars);
    if (l == r) continue;
    Checker ck(mon.pre());
    if (ck.check({mon_ctx(vars), Statement::term_eq(l, r, a("Mon"))}) == Verdict::Ok) out.emplace_back(l, r);
  }
  return out;
}

}  // namespace

TEST(Theory, StdlibCertifies) {
  for (const auto& name : stdlib_names()) {
    SCOPED_TRACE(name);
    const Theory& t = stdlib_theory(name);
    EXPECT_EQ(t.certificate().size(), t.size());
  }
  EXPECT_EQ(stdlib_theory("Cat").pre().symbol_count(), 4u);
  EXPECT_EQ(stdlib_theory("Cat").pre().axiom_count(), 3u);
  EXPECT_TRUE(stdlib_theory("STLC").pi_rules());
  EXPECT_EQ(stdlib_find("MLTT_N"), stdlib_find("MLTT-N"));
}

TEST(Theory, TyAndElHaveTheExpectedTelescopes) {
  Theory t2 = mk_Ty(2);
  ASSERT_EQ(t2.size(), 3u);
  EXPECT_EQ(t2[2].ctx.size(), 2u);
  EXPECT_EQ(t2[2].ctx[1].type, a("A1", {v("x0")}));
  Theory e1 = mk_El(1);
  ASSERT_EQ(e1.size(), 3u);
  EXPECT_EQ(e1[2].kind, DeclKind::TermSymbol);
  EXPECT_EQ(e1[2].type, a("A1", {v("x0")}));
}

TEST(Theory, ReportsDuplicatesAndForwardReferences) {
  Pretheory dup;
  dup.push_back(Declaration::type_symbol("A", {}));
  dup.push_back(Declaration::type_symbol("A", {}));
  try {
    check_theory(dup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DuplicateName);
  }
  Pretheory fwd = parse_theory(
      "theory F { sym Ob : () => Type  ax early : (x : Ob) => f(x) = x : Ob  sym f : (x : Ob) => Ob }");
  try {
    check_theory(fwd);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ForwardReference);
    EXPECT_EQ(e.where(), "early");
  }
}

TEST(Theory, FillsInferredEquationTypes) {
  Theory t = check_theory(parse_theory("theory M extends Mon { ax twice : (y : Mon) => mul(y, y) = y }"));
  const Declaration* d = t.find("twice");
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->type, a("Mon"));
}

TEST(Theory, TypeEquationsDriveConversion) {
  Theory t = check_theory(parse_theory(
      "theory C { sym A : () => Type  sym B : () => Type  ax ab : () => A = B : Type  sym b : () => B  sym f : (x : A) => A }"));
  Checker ck(t.pre());
  EXPECT_EQ(ck.infer_type({}, a("f", {a("b")})), a("A"));
  EXPECT_EQ(ck.check({{}, Statement::has_type(a("b"), a("A"))}), Verdict::Ok);
  EXPECT_EQ(ck.check({{}, Statement::type_eq(a("A"), a("B"))}), Verdict::Ok);
}

TEST(Theory, ExtendChecksOnlyTheNewDeclaration) {
  Theory mon = stdlib_theory("Mon");
  Theory pointed = extend(mon, Declaration::term_symbol("e", {}, a("Mon")));
  EXPECT_EQ(pointed.size(), mon.size() + 1);
  EXPECT_THROW(extend(mon, Declaration::term_symbol("u", {}, a("Mon"))), Error);
  EXPECT_THROW(extend(mon, Declaration::term_symbol("e", {}, a("Nope"))), Error);
}

// Derivable equations stay derivable after substituting terms for their
// variables.
TEST(TypeTheory, StableUnderSubstitution) {
  const Theory& mon = stdlib_theory("Mon");
  const std::vector<std::string> fresh = {"s", "t"};
  std::mt19937 rng(5);
  auto eqs = derivable_mon_equations(41, 25);
  ASSERT_GE(eqs.size(), 10u);
  for (const auto& [l, r] : eqs) {
    Substitution sub;
    for (const char* x : {"p", "q", "r"}) sub.emplace(x, word(rng, 2, fresh));
    Checker ck(mon.pre());
    EXPECT_EQ(ck.check({mon_ctx(fresh), Statement::term_eq(substitute(l, sub), substitute(r, sub), a("Mon"))}),
              Verdict::Ok);
  }
}

// Derivable equations stay derivable in the hypothesized theory.
TEST(TypeTheory, StableUnderHypothesizing) {
  const PolyTheory p = poly_apply(share(stdlib_theory("Mon")));
  for (const auto& [l, r] : derivable_mon_equations(43, 20)) {
    Context ctx = {{"x0", a("A0")}};
    for (const char* x : {"p", "q", "r"}) ctx.push_back({x, a("Mon", {v("x0")})});
    Checker ck(p.theory->pre());
    EXPECT_EQ(ck.check({ctx, Statement::term_eq(hypothesize(l, "x0"), hypothesize(r, "x0"), a("Mon", {v("x0")}))}),
              Verdict::Ok);
  }
}

// Derivable equations are carried along a valid interpretation.
TEST(TypeTheory, StableUnderInterpretation) {
  SourceFile f = parse(R"(
    interp Endo : Mon -> CatPt {
      Mon |-> Hom(b, b) ;
      u |-> id(b) ;
      mul(y1, y2) |-> comp(b, b, b, y1, y2) ;
    })",
                       stdlib_lookup);
  Interpretation endo{"Endo", share(stdlib_theory("Mon")), share(stdlib_theory("CatPt")), f.interps.front().map};
  ASSERT_TRUE(check_interpretation(endo).ok());
  const Context ctx = endo(mon_ctx({"p", "q", "r"}));
  for (const auto& [l, r] : derivable_mon_equations(47, 20)) {
    Checker ck(endo.dst->pre());
    EXPECT_EQ(ck.check({ctx, Statement::term_eq(endo(l), endo(r), endo(a("Mon")))}), Verdict::Ok);
  }
}
