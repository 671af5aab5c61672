#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <vector>

#include "gatc/egraph.hpp"
#include "gatc/models.hpp"
#include "gatc/poly.hpp"
#include "gatc/stdlib.hpp"
#include "gatc/syntax.hpp"

using namespace gatc;

namespace {

// Straightforward count of monoid structures on {0, ..., s-1} for s <= k,
// written against the axioms directly rather than through the enumerator.
std::size_t naive_monoid_count(int k) {
  std::size_t count = 0;
  for (int s = 0; s <= k; ++s) {
    const int cells = s * s;
    int tables = 1;
    for (int i = 0; i < cells; ++i) tables *= s;
    for (int unit = 0; unit < s; ++unit) {
      for (int code = 0; code < tables; ++code) {
        std::vector<int> mul(static_cast<std::size_t>(cells));
        int rest = code;
        for (auto& m : mul) {
          m = rest % s;
          rest /= s;
        }
        auto op = [&](int a, int b) { return mul[static_cast<std::size_t>(a * s + b)]; };
        bool ok = true;
        for (int a = 0; a < s && ok; ++a) {
          if (op(unit, a) != a || op(a, unit) != a) ok = false;
          for (int b = 0; b < s && ok; ++b)
            for (int c = 0; c < s && ok; ++c)
              if (op(op(a, b), c) != op(a, op(b, c))) ok = false;
        }
        if (ok) ++count;
      }
    }
  }
  return count;
}

std::size_t naive_pointed_monoid_count(int k) {
  std::size_t count = 0;
  for (const auto& m : enumerate_models(stdlib_theory("Mon"), k)) count += static_cast<std::size_t>(m.tables.at("Mon").at({}));
  return count;
}

TheoryPtr lib(const std::string& name) { return share(stdlib_theory(name)); }

Interpretation endo_map(const std::string& unit_body) {
  SourceFile f = parse("interp E : Mon -> CatPt { Mon |-> Hom(b, b) ; u |-> " + unit_body +
                           " ; mul(y1, y2) |-> comp(b, b, b, y1, y2) ; }",
                       stdlib_lookup);
  return {"E", lib("Mon"), lib("CatPt"), f.interps.front().map};
}

Expr word(std::mt19937& rng, int depth) {
  static const char* vars[] = {"p", "q", "r"};
  int k = static_cast<int>(rng() % (depth == 0 ? 4 : 5));
  if (k == 3) return Expr::app("u");
  if (k < 3) return Expr::var(vars[k]);
  return Expr::app("mul", {word(rng, depth - 1), word(rng, depth - 1)});
}

void leaves(const Expr& e, std::vector<Expr>& out) {
  if (e.kind() == ExprKind::App && e.name() == "mul") {
    leaves(e.arg(0), out);
    leaves(e.arg(1), out);
  } else if (e.kind() == ExprKind::Var) {
    out.push_back(e);
  }
}

// Same variables in the same order, bracketed at random, units sprinkled in.
Expr rebracket(std::mt19937& rng, const std::vector<Expr>& xs, std::size_t lo, std::size_t hi) {
  Expr e = Expr::app("u");
  if (hi - lo == 1) e = xs[lo];
  if (hi - lo > 1) {
    std::size_t mid = lo + 1 + rng() % (hi - lo - 1);
    e = Expr::app("mul", {rebracket(rng, xs, lo, mid), rebracket(rng, xs, mid, hi)});
  }
  switch (rng() % 4) {
    case 0: return Expr::app("mul", {Expr::app("u"), e});
    case 1: return Expr::app("mul", {e, Expr::app("u")});
    default: return e;
  }
}

}  // namespace

TEST(ModelOracle, NaiveMonoidCountsAreSane) {
  EXPECT_EQ(naive_monoid_count(0), 0u);
  EXPECT_EQ(naive_monoid_count(1), 1u);
  EXPECT_EQ(naive_monoid_count(2), 5u);
}

TEST(Models, BaseTypeHasOneModelPerSize) {
  auto ms = enumerate_models(*ty0(), 2);
  ASSERT_EQ(ms.size(), 3u);
  for (int s = 0; s < 3; ++s) EXPECT_EQ(ms[static_cast<std::size_t>(s)].tables.at("A0").at({}), s);
}

TEST(Models, PointedSetsExcludeTheEmptyCarrier) {
  auto ms = enumerate_models(*el0(), 2);
  ASSERT_EQ(ms.size(), 3u);
  EXPECT_EQ(ms[0].tables.at("A0").at({}), 1);
  EXPECT_EQ(ms[1].tables.at("e0").at({}), 0);
  EXPECT_EQ(ms[2].tables.at("e0").at({}), 1);
}

TEST(Models, MonoidCountMatchesTheNaiveOracle) {
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(enumerate_models(stdlib_theory("Mon"), k).size(), naive_monoid_count(k)) << k;
}

TEST(Models, DependentCarriers) {
  // Ty1 at k = 2: sum over |A0| = s of (k+1)^s.
  EXPECT_EQ(enumerate_models(*detail::ty_theory(1), 2).size(), 1u + 3u + 9u);
}

TEST(Models, DeterministicDuplicateFreeAndSound) {
  for (const char* name : {"Mon", "CatPt", "El1"}) {
    SCOPED_TRACE(name);
    const Theory& t = stdlib_theory(name);
    auto a = enumerate_models(t, name == std::string("CatPt") ? 1 : 2);
    auto b = enumerate_models(t, name == std::string("CatPt") ? 1 : 2);
    EXPECT_EQ(a, b);
    EXPECT_EQ(std::set<Model>(a.begin(), a.end()).size(), a.size());
    for (const auto& m : a) EXPECT_TRUE(satisfies(t, m));
  }
}

TEST(Models, EvaluationFollowsTheUnitLaw) {
  const Theory& mon = stdlib_theory("Mon");
  Expr uu = Expr::app("mul", {Expr::app("u"), Expr::app("u")});
  for (const auto& m : enumerate_models(mon, 2)) {
    auto v = eval(mon, m, {}, uu);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(std::get<int>(*v), m.tables.at("u").at({}));
  }
  auto env_value = eval(mon, enumerate_models(mon, 1).front(), {{"x", 0}}, Expr::var("x"));
  EXPECT_EQ(std::get<int>(*env_value), 0);
}

TEST(Models, BudgetAndPiAreRefused) {
  try {
    enumerate_models(stdlib_theory("Cat"), 2, ModelBudget{100});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Budget);
  }
  EXPECT_THROW(enumerate_models(stdlib_theory("STLC"), 1), Error);
}

TEST(Reduct, IdentityAndFunctoriality) {
  const TheoryPtr mon = lib("Mon");
  Interpretation carrier{"Carrier", ty0(), mon, {{"A0", SymbolImage{{}, Expr::app("Mon")}}}};
  Interpretation endo = endo_map("id(b)");
  for (const auto& m : enumerate_models(*mon, 2)) EXPECT_EQ(reduct(m, identity(mon)), m);
  for (const auto& m : enumerate_models(stdlib_theory("CatPt"), 1)) {
    EXPECT_EQ(reduct(m, compose(carrier, endo)), reduct(reduct(m, endo), carrier));
  }
}

TEST(Reduct, EndomorphismsFormAMonoid) {
  Interpretation endo = endo_map("id(b)");
  Interpretation endo_u = endo_map("comp(b, b, b, id(b), id(b))");
  ASSERT_TRUE(equivalent(endo, endo_u).ok());
  const Theory& mon = stdlib_theory("Mon");
  std::size_t seen = 0;
  for (const auto& m : enumerate_models(stdlib_theory("CatPt"), 2, ModelBudget{20'000'000})) {
    Model r = reduct(m, endo);
    EXPECT_TRUE(satisfies(mon, r));
    EXPECT_EQ(r, reduct(m, endo_u));
    ++seen;
  }
  EXPECT_GT(seen, 0u);
}

TEST(Duality, CoproductOfBaseTypes) {
  DualityReport r = check_colimit_duality(coproduct(ty0(), ty0()), 2);
  EXPECT_EQ(r.colimit_models, 9u);
  EXPECT_EQ(r.component_models, 9u);
  EXPECT_TRUE(r.bijection());
}

TEST(Duality, CoproductOfMonoidAndBaseType) {
  DualityReport r = check_colimit_duality(coproduct(lib("Mon"), ty0()), 2);
  EXPECT_EQ(r.colimit_models, naive_monoid_count(2) * 3u);
  EXPECT_TRUE(r.bijection());
}

TEST(Duality, PointedMonoidPushout) {
  Interpretation carrier{"Carrier", ty0(), lib("Mon"), {{"A0", SymbolImage{{}, Expr::app("Mon")}}}};
  Pushout p = pushout(ty0(), el0(), carrier);
  DualityReport r = check_colimit_duality(p, ty0(), carrier, 2);
  EXPECT_EQ(r.colimit_models, naive_pointed_monoid_count(2));
  EXPECT_TRUE(r.bijection());
}

TEST(Duality, ReflexiveCoequalizerChangesNothing) {
  Interpretation carrier{"Carrier", ty0(), lib("Mon"), {{"A0", SymbolImage{{}, Expr::app("Mon")}}}};
  Coequalizer q = coequalizer(carrier, carrier);
  DualityReport r = check_colimit_duality(q, carrier, carrier, 2);
  EXPECT_EQ(r.colimit_models, enumerate_models(stdlib_theory("Mon"), 2).size());
  EXPECT_TRUE(r.bijection());
}

// Proved equations evaluate equally in every model: the oracle can refute
// an unsound proof, never the converse.
TEST(SoundnessBridge, MonoidEquations) {
  const Theory& mon = stdlib_theory("Mon");
  const auto models = enumerate_models(mon, 2);
  std::mt19937 rng(101);
  std::size_t proved = 0, pairs = 0;
  for (int i = 0; i < 400; ++i) {
    Expr l = word(rng, 3), r = word(rng, 3);
    if (i % 2 == 0) {
      std::vector<Expr> xs;
      leaves(l, xs);
      r = rebracket(rng, xs, 0, xs.size());
    }
    if (!eq_check(mon.pre(), l, r).proved) continue;
    ++proved;
    for (const auto& m : models) {
      const int s = m.tables.at("Mon").at({});
      for (int p = 0; p < s; ++p)
        for (int q = 0; q < s; ++q)
          for (int x = 0; x < s; ++x) {
            Env env = {{"p", p}, {"q", q}, {"r", x}};
            EXPECT_EQ(eval(mon, m, env, l), eval(mon, m, env, r));
            ++pairs;
          }
    }
  }
  EXPECT_GE(proved, 100u);
  EXPECT_GE(pairs, 100u);
}

TEST(SoundnessBridge, CategoryJudgments) {
  const Theory& cat = stdlib_theory("Cat");
  SourceFile f = parse(R"(
    judgment a in Cat : (x : Ob, y : Ob, f : Hom(x, y)) |- comp(x, y, y, comp(x, x, y, id(x), f), id(y)) = f : Hom(x, y)
    judgment b in Cat : (x : Ob) |- comp(x, x, x, id(x), id(x)) = id(x) : Hom(x, x)
  )",
                       stdlib_lookup);
  const auto models = enumerate_models(cat, 2);
  ASSERT_EQ(models.size(), 340u);
  for (const auto& j : f.judgments) {
    Checker ck(cat.pre());
    ASSERT_EQ(ck.check(j.judgment), Verdict::Ok);
    for (const auto& m : models) {
      Evaluator ev(cat.pre(), m);
      ev.instances(j.judgment.ctx, [&](const Env& env, const std::vector<int>&) {
        EXPECT_EQ(ev.term(j.judgment.stmt.lhs, env), ev.term(j.judgment.stmt.rhs, env));
      });
    }
  }
}
