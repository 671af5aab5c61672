#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gatc/check.hpp"
#include "gatc/gatcat.hpp"

namespace gatc {

/// P applied to a theory: A0 : () => Type followed by every declaration
/// with a fresh x0 : A0 prepended to its context.
struct PolyTheory {
  TheoryPtr base;
  TheoryPtr theory;
  std::map<std::string, std::string> names;  // declaration of base -> its copy
  std::map<std::string, std::string> x0;     // declaration of base -> its x0 variable
  Interpretation leg;                        // Ty0 -> PΓ, A0 |-> A0

  const std::string& name_of(const std::string& c) const { return names.at(c); }
};

inline const std::string kReservedType = "A0";

inline TheoryPtr ty0() { return detail::ty_theory(0); }
inline TheoryPtr el0() { return detail::el_theory(0); }

/// p : El0 -> Ty0, as the inclusion Ty0 -> El0.
inline Interpretation el0_leg() {
  return {"p", ty0(), el0(), {{"A0", SymbolImage{{}, Expr::app("A0")}}}};
}

inline PolyTheory poly_apply(const TheoryPtr& g, RuleSet rules = {}, Fuel fuel = {}) {
  PolyTheory out;
  out.base = g;
  std::set<std::string> taken{kReservedType};
  for (const auto& d : g->decls()) {
    std::string n = d.name;
    while (taken.count(n)) n += "'";
    taken.insert(n);
    out.names.emplace(d.name, n);
  }
  std::map<std::string, std::string> rename;
  for (const auto& d : g->decls())
    if (d.is_symbol()) rename.emplace(d.name, out.names.at(d.name));

  Pretheory pre;
  pre.push_back(Declaration::type_symbol(kReservedType, {}));
  for (const auto& d : g->decls()) {
    const auto vars = d.params();
    const std::string x0 =
        fresh_name("x0", [&vars](const std::string& n) { return std::find(vars.begin(), vars.end(), n) != vars.end(); });
    out.x0.emplace(d.name, x0);
    Declaration h = d.map_exprs([&](const Expr& e) { return hypothesize(e, x0, rename); });
    h.name = out.names.at(d.name);
    h.ctx.insert(h.ctx.begin(), ContextEntry{x0, Expr::app(kReservedType)});
    pre.push_back(std::move(h));
  }
  const RuleSet r{rules.pi || g->pi_rules()};
  out.theory = share(check_theory(pre, "P_" + g->name(), r, fuel));
  out.leg = Interpretation{"leg", ty0(), out.theory, {{kReservedType, SymbolImage{{}, Expr::app(kReservedType)}}}};
  return out;
}

/// P on arrows: for I : Γ -> Δ, A0 |-> A0 and each copy of c maps to the
/// hypothesized I(c).
inline Interpretation poly_map(const Interpretation& f, const PolyTheory& pg, const PolyTheory& pd) {
  std::map<std::string, std::string> rename;
  for (const auto& d : pd.base->decls())
    if (d.is_symbol()) rename.emplace(d.name, pd.name_of(d.name));
  Interpretation out{"P_" + f.name, pg.theory, pd.theory, {}};
  out.map.emplace(kReservedType, SymbolImage{{}, Expr::app(kReservedType)});
  for (const auto& [c, img] : f.map) {
    const auto& ps = img.params;
    const std::string x0 =
        fresh_name("x0", [&ps](const std::string& n) { return std::find(ps.begin(), ps.end(), n) != ps.end(); });
    std::vector<std::string> params{x0};
    params.insert(params.end(), ps.begin(), ps.end());
    out.map.emplace(pg.name_of(c), SymbolImage{std::move(params), hypothesize(img.body, x0, rename)});
  }
  return out;
}

/// wk : Γ × Ty0 -> PΓ, as the interpretation PΓ -> Γ ⊔ Ty0 that forgets x0.
inline Interpretation wk_arrow(const PolyTheory& pg, const Coproduct& gxb) {
  Interpretation out{"wk", pg.theory, gxb.apex, {}};
  out.map.emplace(kReservedType, gxb.inr.map.at(kReservedType));
  for (const auto& d : pg.base->decls()) {
    if (!d.is_symbol()) continue;
    std::vector<std::string> params{pg.x0.at(d.name)};
    for (const auto& p : d.params()) params.push_back(p);
    out.map.emplace(pg.name_of(d.name), SymbolImage{std::move(params), gxb.inl.at(d)});
  }
  return out;
}

/// proj : Ty0 -> P El0, as P El0 -> Ty0: the copy of A0 is A0 again and
/// the copy of e0 is the variable x0.
inline Interpretation proj_arrow(const PolyTheory& pel0) {
  const std::string a = pel0.name_of("A0");
  const std::string e = pel0.name_of("e0");
  const std::string x = pel0.x0.at("e0");
  return {"proj",
          pel0.theory,
          ty0(),
          {{kReservedType, SymbolImage{{}, Expr::app(kReservedType)}},
           {a, SymbolImage{{pel0.x0.at("A0")}, Expr::app(kReservedType)}},
           {e, SymbolImage{{x}, Expr::var(x)}}}};
}

/// X ×_Ty0 El0 for a leg Ty0 -> X: X plus a point of leg(A0).
inline Pushout fibre(const Interpretation& leg, RuleSet rules = {}, Fuel fuel = {}) {
  return pushout(ty0(), el0(), leg, rules, fuel, leg.dst->name() + "_x_El0");
}

/// The point added by `fibre`.
inline std::string fibre_point(const Pushout& f) { return f.names.at("e0"); }

/// subst : PΓ ×_Ty0 El0 -> Γ, as Γ -> PΓ ×_Ty0 El0 sending c to its copy
/// with the new point for x0.
inline Interpretation subst_arrow(const PolyTheory& pg, const Pushout& fib) {
  Interpretation out{"subst", pg.base, fib.apex, {}};
  const Expr point = Expr::app(fibre_point(fib));
  for (const auto& d : pg.base->decls()) {
    if (!d.is_symbol()) continue;
    std::vector<Expr> args{point};
    for (const auto& p : d.params()) args.push_back(Expr::var(p));
    out.map.emplace(d.name, SymbolImage{d.params(), Expr::app(pg.name_of(d.name), std::move(args))});
  }
  return out;
}

/// f ×_Ty0 El0 for f : X -> Y over Ty0, given as I_f : Y -> X, between the
/// fibred products `fx` of X and `fy` of Y.
inline Interpretation fibre_map(const Interpretation& f, const Pushout& fx, const Pushout& fy) {
  Interpretation out = pushout_pair(fy, retarget(f, fx.apex), fx.from_total);
  out.name = f.name + "_x_El0";
  return out;
}

/// The unit η : Δ -> P(Δ ×_Ty0 El0) of the adjunction, for a leg f given
/// as I_f : Ty0 -> Δ.
struct Unit {
  Pushout fibre;
  PolyTheory poly;
  Interpretation eta;  // P(Δ ×_Ty0 El0) -> Δ
};

inline Unit derive_unit(const Interpretation& f, RuleSet rules = {}, Fuel fuel = {}) {
  Pushout r = fibre(f, rules, fuel);
  PolyTheory pr = poly_apply(r.apex, rules, fuel);
  Interpretation eta{"eta", pr.theory, f.dst, {}};
  eta.map.emplace(kReservedType, f.map.at(kReservedType));
  for (const auto& d : f.dst->decls()) {
    if (!d.is_symbol()) continue;
    std::vector<std::string> params{pr.x0.at(d.name)};
    for (const auto& p : d.params()) params.push_back(p);
    eta.map.emplace(pr.name_of(d.name), SymbolImage{std::move(params), apply_to_params(d.name, d)});
  }
  const std::string point = fibre_point(r);
  const std::string x = pr.x0.at(point);
  eta.map.emplace(pr.name_of(point), SymbolImage{{x}, Expr::var(x)});
  return {std::move(r), std::move(pr), std::move(eta)};
}

enum class Status { Proved, Failed, Inconclusive };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Proved: return "Proved";
    case Status::Failed: return "Failed";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct AxiomCheck {
  std::string axiom;
  std::string sample;
  Status status = Status::Proved;
  std::size_t axiom_instances = 0;
  std::vector<Rule> rules_used;
  std::string note;
  CheckReport detail;
};

inline AxiomCheck judge(std::string axiom, std::string sample, CheckReport rep) {
  AxiomCheck c;
  c.axiom = std::move(axiom);
  c.sample = std::move(sample);
  c.axiom_instances = rep.axiom_instances();
  std::set<Rule> used;
  for (const auto& o : rep.items) {
    for (const auto& p : o.trace)
      for (Rule r : p.rules_used()) used.insert(r);
    if (o.verdict != Verdict::Ok && c.note.empty()) c.note = o.decl + ": " + o.note;
  }
  c.rules_used.assign(used.begin(), used.end());
  c.status = rep.ok() ? Status::Proved : rep.saturated_failure() ? Status::Failed : Status::Inconclusive;
  c.detail = std::move(rep);
  return c;
}

/// Everything P needs for one theory Γ, built once.
struct PolyContext {
  RuleSet rules;
  Fuel fuel;
  PolyTheory pg;
  Coproduct gxb;     // Γ ⊔ Ty0
  Interpretation wk;
  Pushout fib;       // PΓ ×_Ty0 El0
  Interpretation subst;

  PolyContext(const TheoryPtr& g, RuleSet r, Fuel f)
      : rules(r),
        fuel(f),
        pg(poly_apply(g, r, f)),
        gxb(coproduct(g, ty0())),
        wk(wk_arrow(pg, gxb)),
        fib(fibre(pg.leg, r, f)),
        subst(subst_arrow(pg, fib)) {}
};

enum class Mutation { None, Subst };

/// Replaces the image of every term symbol of a subst arrow by the image
/// of its own type, which no equation can repair.
inline Interpretation corrupt_subst(const Interpretation& subst) {
  Interpretation out = subst;
  for (const auto& d : subst.src->decls()) {
    if (d.kind != DeclKind::TermSymbol) continue;
    out.map[d.name] = SymbolImage{d.params(), subst(d.type)};
  }
  return out;
}

/// The map Γ ⊔ Ty0 -> Δ out of a product with Ty0 whose Ty0 part is `f`.
inline Interpretation pair_with_leg(const Coproduct& gxb, const Interpretation& f) {
  return copair(gxb, identity(f.dst), f);
}

inline AxiomCheck check_p1(RuleSet rules = {}, Fuel fuel = {}) {
  PolyTheory pb = poly_apply(ty0(), rules, fuel);
  PolyTheory pe = poly_apply(el0(), rules, fuel);
  Coproduct bxb = coproduct(ty0(), ty0());
  Interpretation lhs = compose(poly_map(el0_leg(), pb, pe), proj_arrow(pe));
  Interpretation diag = copair(bxb, identity(ty0()), identity(ty0()));
  Interpretation rhs = compose(wk_arrow(pb, bxb), diag);
  return judge("P1", "Ty0", equivalent(lhs, rhs, rules, fuel));
}

inline AxiomCheck check_p2(Mutation m = Mutation::None, RuleSet rules = {}, Fuel fuel = {}) {
  PolyContext pe(el0(), rules, fuel);
  Interpretation subst = m == Mutation::Subst ? corrupt_subst(pe.subst) : pe.subst;
  Pushout fb = fibre(identity(ty0()), rules, fuel);  // Ty0 ×_Ty0 El0
  Interpretation proj_x = fibre_map(proj_arrow(pe.pg), fb, pe.fib);
  Interpretation lhs = compose(subst, proj_x);
  return judge("P2", "El0", equivalent(lhs, fb.from_total, rules, fuel));
}

inline AxiomCheck check_p3(const PolyContext& px) {
  Pushout g = fibre(px.gxb.inr, px.rules, px.fuel);  // (Γ × Ty0) ×_Ty0 El0
  Interpretation wk_x = fibre_map(px.wk, g, px.fib);
  Interpretation lhs = compose(px.subst, wk_x);
  Interpretation projection = retarget(px.gxb.inl, g.apex);
  return judge("P3", px.pg.base->name(), equivalent(lhs, projection, px.rules, px.fuel));
}

/// P4, also the first triangle identity: P subst ∘ η_PΓ = id.
inline AxiomCheck check_p4(const PolyContext& px, std::string label = "P4") {
  Unit u = derive_unit(px.pg.leg, px.rules, px.fuel);
  PolyTheory pf = poly_apply(px.fib.apex, px.rules, px.fuel);
  // derive_unit builds the same fibred product; its P is the same theory.
  Interpretation lhs = compose(poly_map(px.subst, px.pg, pf), u.eta);
  return judge(std::move(label), px.pg.base->name(), equivalent(lhs, identity(px.pg.theory), px.rules, px.fuel));
}

inline const std::vector<std::string>& default_poly_samples() {
  static const std::vector<std::string> s = {"terminal", "Ty0", "El0", "Mon", "Cat"};
  return s;
}

/// P1 on Ty0, P2 on El0, P3 and P4 on every sample.
inline std::vector<AxiomCheck> verify_polynomial_axioms(const std::vector<TheoryPtr>& samples, RuleSet rules = {},
                                                        Fuel fuel = {}, Mutation m = Mutation::None) {
  std::vector<AxiomCheck> out;
  auto guarded = [&out](const char* axiom, const std::string& sample, auto&& run) {
    try {
      out.push_back(run());
    } catch (const Error& e) {
      AxiomCheck c;
      c.axiom = axiom;
      c.sample = sample;
      c.status = e.inconclusive() ? Status::Inconclusive : Status::Failed;
      c.note = e.what();
      out.push_back(std::move(c));
    }
  };
  guarded("P1", "Ty0", [&] { return check_p1(rules, fuel); });
  guarded("P2", "El0", [&] { return check_p2(m, rules, fuel); });
  for (const auto& g : samples) {
    PolyContext px(g, rules, fuel);
    guarded("P3", g->name(), [&] { return check_p3(px); });
    guarded("P4", g->name(), [&] { return check_p4(px); });
  }
  return out;
}

/// Unit equations: P π1 ∘ η = wk ∘ (id, f) and P π2 ∘ η = proj ∘ f.
inline std::vector<AxiomCheck> check_unit_equations(const Interpretation& f, const std::string& label, RuleSet rules = {},
                                                    Fuel fuel = {}) {
  std::vector<AxiomCheck> out;
  Unit u = derive_unit(f, rules, fuel);
  PolyTheory py = poly_apply(f.dst, rules, fuel);
  PolyTheory pe = poly_apply(el0(), rules, fuel);
  Coproduct yxb = coproduct(f.dst, ty0());

  Interpretation lhs_wk = compose(poly_map(u.fibre.from_target, py, u.poly), u.eta);
  Interpretation rhs_wk = compose(wk_arrow(py, yxb), pair_with_leg(yxb, f));
  out.push_back(judge("unit-wk", label, equivalent(lhs_wk, rhs_wk, rules, fuel)));

  Interpretation lhs_proj = compose(poly_map(u.fibre.from_total, pe, u.poly), u.eta);
  Interpretation rhs_proj = compose(proj_arrow(pe), f);
  out.push_back(judge("unit-proj", label, equivalent(lhs_proj, rhs_proj, rules, fuel)));
  return out;
}

/// wk recovered as P π1 ∘ η_{Γ×Ty0}, and proj
/// recovered as η_Ty0 under P(Ty0 ×_Ty0 El0) ≅ P El0.
inline std::vector<AxiomCheck> check_recovery(const TheoryPtr& g, RuleSet rules = {}, Fuel fuel = {}) {
  std::vector<AxiomCheck> out;
  PolyContext px(g, rules, fuel);
  Unit u = derive_unit(px.gxb.inr, rules, fuel);
  Interpretation pi1 = retarget(px.gxb.inl, u.fibre.apex);
  Interpretation wk_back = compose(poly_map(pi1, px.pg, u.poly), u.eta);
  out.push_back(judge("recover-wk", g->name(), equivalent(wk_back, px.wk, rules, fuel)));

  PolyTheory pe = poly_apply(el0(), rules, fuel);
  Unit ub = derive_unit(identity(ty0()), rules, fuel);
  Interpretation proj_back = compose(poly_map(ub.fibre.from_total, pe, ub.poly), ub.eta);
  out.push_back(judge("recover-proj", "Ty0", equivalent(proj_back, proj_arrow(pe), rules, fuel)));
  return out;
}

/// Triangle identities: the subst triangle at Γ and the leg triangle at f : Δ -> Ty0.
inline std::vector<AxiomCheck> check_triangles(const TheoryPtr& g, const Interpretation& f, const std::string& label,
                                               RuleSet rules = {}, Fuel fuel = {}) {
  std::vector<AxiomCheck> out;
  PolyContext px(g, rules, fuel);
  out.push_back(check_p4(px, "triangle-subst"));

  Unit u = derive_unit(f, rules, fuel);
  PolyTheory& pr = u.poly;
  Pushout fpr = fibre(pr.leg, rules, fuel);
  Interpretation subst_r = subst_arrow(pr, fpr);
  Interpretation eta_x = fibre_map(retarget(u.eta, u.fibre.apex), u.fibre, fpr);
  Interpretation lhs = compose(subst_r, eta_x);
  AxiomCheck c = judge("triangle-leg", label, equivalent(lhs, identity(u.fibre.apex), rules, fuel));
  out.push_back(std::move(c));
  return out;
}

/// P(Ty_n) ≅ Ty_{n+1} and P(El_n) ≅ El_{n+1}: both sides list their symbols
/// in matching order, so the candidate maps are positional.
inline Interpretation positional(const TheoryPtr& src, const TheoryPtr& dst, std::string name) {
  Interpretation out{std::move(name), src, dst, {}};
  const auto a = src->pre().symbols();
  const auto b = dst->pre().symbols();
  if (a.size() != b.size()) throw Error(ErrorCode::InvalidInterpretation, "symbol counts differ");
  for (std::size_t i = 0; i < a.size(); ++i) out.map.emplace(a[i]->name, SymbolImage{a[i]->params(), apply_to_params(b[i]->name, *a[i])});
  return out;
}

struct IsoCheck {
  std::string label;
  Status status = Status::Proved;
  CheckReport validity;
  CheckReport inverse;
};

inline IsoCheck check_poly_iso(const TheoryPtr& t, const TheoryPtr& next, RuleSet rules = {}, Fuel fuel = {}) {
  PolyTheory p = poly_apply(t, rules, fuel);
  Interpretation to = positional(next, p.theory, "to_P");
  Interpretation from = positional(p.theory, next, "from_P");
  IsoCheck c;
  c.label = "P(" + t->name() + ") ~ " + next->name();
  c.validity = check_interpretation(to, rules, fuel);
  for (auto& o : check_interpretation(from, rules, fuel).items) c.validity.items.push_back(std::move(o));
  c.inverse = check_mutually_inverse(to, from, rules, fuel);
  c.status = c.validity.ok() && c.inverse.ok() ? Status::Proved : Status::Inconclusive;
  return c;
}

/// The square Π ∘ τ = p ∘ λ and its pullback comparison arrow.
struct PiSquare {
  Interpretation pi;      // Π : Ty1 -> Ty0, as Ty0 -> Ty1
  Interpretation lambda;  // λ : El1 -> El0, as El0 -> El1
  Interpretation tau;     // El1 -> Ty1, as Ty1 -> El1
  Interpretation p;       // El0 -> Ty0, as Ty0 -> El0
  Pushout pullback;       // Ty1 ×_Ty0 El0
  Interpretation comparison;  // El1 -> pullback, as pullback -> El1
  Interpretation inverse;     // pullback -> El1, as El1 -> pullback
  std::vector<AxiomCheck> checks;
};

inline PiSquare pi_square(Fuel fuel = {}) {
  const RuleSet rules = RuleSet::with_pi();
  const TheoryPtr ty1 = detail::ty_theory(1);
  const TheoryPtr el1 = detail::el_theory(1);
  const Expr x0 = Expr::var("x0");
  const Expr pi_type = Expr::pi("x0", Expr::app("A0"), Expr::app("A1", {x0}));
  PiSquare s;
  s.pi = Interpretation{"Pi", ty0(), ty1, {{"A0", SymbolImage{{}, pi_type}}}};
  s.lambda = Interpretation{"lambda", el0(), el1,
                            {{"A0", SymbolImage{{}, pi_type}},
                             {"e0", SymbolImage{{}, Expr::lam("x0", Expr::app("A0"), Expr::app("e1", {x0}))}}}};
  s.tau = retarget(identity(ty1), el1);
  s.tau.name = "tau";
  s.p = el0_leg();
  s.checks.push_back(judge("square", "Ty1/El1", equivalent(compose(s.p, s.lambda), compose(s.pi, s.tau), rules, fuel)));

  s.pullback = pushout(ty0(), el0(), s.pi, rules, fuel, "Ty1_x_El0");
  s.comparison = pushout_pair(s.pullback, s.tau, s.lambda);
  s.comparison.name = "comparison";
  const std::string point = fibre_point(s.pullback);
  s.inverse = Interpretation{"inverse", el1, s.pullback.apex, {}};
  s.inverse.map.emplace("A0", SymbolImage{{}, Expr::app("A0")});
  s.inverse.map.emplace("A1", SymbolImage{{"x0"}, Expr::app("A1", {x0})});
  s.inverse.map.emplace("e1", SymbolImage{{"x0"}, Expr::ap(Expr::app(point), x0)});

  s.checks.push_back(judge("comparison-valid", "Ty1_x_El0", check_interpretation(s.comparison, rules, fuel)));
  s.checks.push_back(judge("inverse-valid", "El1", check_interpretation(s.inverse, rules, fuel)));
  s.checks.push_back(judge("round-trip-pullback", "Ty1_x_El0",
                           equivalent(compose(s.comparison, s.inverse), identity(s.pullback.apex), rules, fuel)));
  s.checks.push_back(
      judge("round-trip-El1", "El1", equivalent(compose(s.inverse, s.comparison), identity(el1), rules, fuel)));
  return s;
}

}  // namespace gatc
