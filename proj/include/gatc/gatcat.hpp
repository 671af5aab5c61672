#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gatc/check.hpp"
#include "gatc/deriv.hpp"
#include "gatc/error.hpp"
#include "gatc/syntax.hpp"
#include "gatc/theory.hpp"

namespace gatc {

inline TheoryPtr share(Theory t) { return std::make_shared<const Theory>(std::move(t)); }

/// A map from the symbols of `src` to expressions in context over `dst`.
/// As an arrow of the opposite category it points from dst to src.
struct Interpretation {
  std::string name;
  TheoryPtr src;
  TheoryPtr dst;
  SymbolMap map;

  Expr operator()(const Expr& e) const { return translate(e, map); }

  Context operator()(const Context& ctx) const {
    Context out;
    for (const auto& e : ctx) out.push_back({e.var, translate(e.type, map)});
    return out;
  }

  /// The image of symbol `c` applied to the variables of its own context.
  Expr at(const Declaration& c) const {
    auto it = map.find(c.name);
    if (it == map.end()) throw Error(ErrorCode::InvalidInterpretation, "no image for symbol '" + c.name + "'", c.name);
    std::vector<Expr> vars;
    for (const auto& e : c.ctx) vars.push_back(Expr::var(e.var));
    return it->second.instantiate(vars);
  }
};

/// The same symbol images read as an interpretation into `dst`, a theory
/// containing the original target.
inline Interpretation retarget(Interpretation i, const TheoryPtr& dst) {
  i.dst = dst;
  return i;
}

inline Interpretation identity(const TheoryPtr& t) {
  Interpretation id{"id_" + t->name(), t, t, {}};
  for (const auto& d : t->decls())
    if (d.is_symbol()) id.map.emplace(d.name, identity_image(d));
  return id;
}

/// First I, then J: c maps to J applied to I(c).
inline Interpretation compose(const Interpretation& i, const Interpretation& j) {
  Interpretation out{j.name + "_o_" + i.name, i.src, j.dst, {}};
  for (const auto& [c, img] : i.map) out.map.emplace(c, SymbolImage{img.params, translate(img.body, j.map)});
  return out;
}

struct Obligation {
  std::string decl;
  Verdict verdict = Verdict::Ok;
  std::vector<Proof> trace;
  std::string note;
  // Set when saturation closed without a proof rather than running dry.
  bool saturated = false;
};

struct CheckReport {
  std::vector<Obligation> items;

  bool ok() const {
    for (const auto& o : items)
      if (o.verdict != Verdict::Ok) return false;
    return true;
  }
  Verdict verdict() const { return ok() ? Verdict::Ok : Verdict::Inconclusive; }
  bool saturated_failure() const {
    for (const auto& o : items)
      if (o.verdict != Verdict::Ok && o.saturated) return true;
    return false;
  }
  std::size_t axiom_instances() const {
    std::size_t n = 0;
    for (const auto& o : items)
      for (const auto& p : o.trace) n += p.axiom_instances();
    return n;
  }
};

/// Checks each declaration of the source, translated, over the target.
/// Genuine failures throw; obligations that run out of fuel are reported
/// as inconclusive.
inline CheckReport check_interpretation(const Interpretation& i, RuleSet rules = {}, Fuel fuel = {}) {
  CheckReport report;
  for (const auto& d : i.src->decls()) {
    Obligation ob{d.name, Verdict::Ok, {}, {}, false};
    Checker ck(i.dst->pre(), rules, fuel);
    try {
      if (d.is_symbol()) {
        auto it = i.map.find(d.name);
        if (it == i.map.end())
          throw Error(ErrorCode::InvalidInterpretation, "no image for symbol '" + d.name + "'", d.name);
        if (it->second.params.size() != d.ctx.size())
          throw Error(ErrorCode::ArityMismatch, "image of '" + d.name + "' has the wrong number of parameters", d.name);
      }
      Judgment j;
      j.ctx = i(d.ctx);
      switch (d.kind) {
        case DeclKind::TypeSymbol: j.stmt = Statement::is_type(i.at(d)); break;
        case DeclKind::TermSymbol: j.stmt = Statement::has_type(i.at(d), i(d.type)); break;
        case DeclKind::TypeEq: j.stmt = Statement::type_eq(i(d.lhs), i(d.rhs)); break;
        case DeclKind::TermEq: j.stmt = Statement::term_eq(i(d.lhs), i(d.rhs), d.type ? i(d.type) : Expr{}); break;
      }
      ob.verdict = ck.check(j);
      if (ob.verdict != Verdict::Ok) {
        ob.saturated = ck.saturated();
        ob.note = ob.saturated ? "not derivable after saturation" : "fuel exhausted";
      }
    } catch (const Error& e) {
      if (!e.inconclusive()) throw Error(e.code(), "interpretation '" + i.name + "' at '" + d.name + "': " + e.what(), d.name);
      ob.verdict = Verdict::Inconclusive;
      ob.note = e.what();
    }
    ob.trace = ck.trace();
    report.items.push_back(std::move(ob));
  }
  return report;
}

/// Per-symbol equality of images in the context translated by `a`.
inline CheckReport equivalent(const Interpretation& a, const Interpretation& b, RuleSet rules = {}, Fuel fuel = {}) {
  CheckReport report;
  for (const auto& d : a.src->decls()) {
    if (!d.is_symbol()) continue;
    Obligation ob{d.name, Verdict::Ok, {}, {}, false};
    EqVerdict v = eq_check(a.dst->pre(), a.at(d), b.at(d), rules, fuel);
    if (v.proved) {
      ob.trace.push_back(std::move(v.proof));
    } else {
      ob.verdict = Verdict::Inconclusive;
      ob.saturated = v.saturated;
      ob.note = print_expr(a.at(d), d.params()) + " vs " + print_expr(b.at(d), d.params());
    }
    report.items.push_back(std::move(ob));
  }
  return report;
}

inline CheckReport check_mutually_inverse(const Interpretation& i, const Interpretation& j, RuleSet rules = {},
                                          Fuel fuel = {}) {
  CheckReport report = equivalent(compose(i, j), identity(i.src), rules, fuel);
  CheckReport back = equivalent(compose(j, i), identity(j.src), rules, fuel);
  for (auto& o : back.items) {
    o.decl = "inverse:" + o.decl;
    report.items.push_back(std::move(o));
  }
  return report;
}

namespace detail {

// Renames symbols (and axiom labels) of a pretheory, translating bodies.
inline Pretheory rename_all(const Pretheory& pre, const std::map<std::string, std::string>& names) {
  SymbolMap map;
  for (const auto& d : pre.decls())
    if (d.is_symbol()) map.emplace(d.name, SymbolImage{d.params(), apply_to_params(names.at(d.name), d)});
  Pretheory out;
  for (const auto& d : pre.decls()) {
    Declaration r = d.map_exprs([&map](const Expr& e) { return translate(e, map); });
    r.name = names.at(d.name);
    out.push_back(std::move(r));
  }
  return out;
}

inline SymbolMap renaming_map(const Pretheory& pre, const std::map<std::string, std::string>& names) {
  SymbolMap map;
  for (const auto& d : pre.decls())
    if (d.is_symbol()) map.emplace(d.name, SymbolImage{d.params(), apply_to_params(names.at(d.name), d)});
  return map;
}

inline std::string primed(std::string name, const std::set<std::string>& taken) {
  while (taken.count(name)) name += "'";
  return name;
}

}  // namespace detail

struct Coproduct {
  TheoryPtr apex;
  Interpretation inl;
  Interpretation inr;
};

/// Disjoint union: every name of the left gets "#1", of the right "#2".
inline Coproduct coproduct(const TheoryPtr& l, const TheoryPtr& r, std::string name = {}) {
  std::map<std::string, std::string> ln, rn;
  for (const auto& d : l->decls()) ln.emplace(d.name, d.name + "#1");
  for (const auto& d : r->decls()) rn.emplace(d.name, d.name + "#2");
  Pretheory pre = detail::rename_all(l->pre(), ln);
  const Pretheory right = detail::rename_all(r->pre(), rn);
  for (const auto& d : right.decls()) pre.push_back(d);
  if (name.empty()) name = l->name() + "_plus_" + r->name();
  const RuleSet rules{l->pi_rules() || r->pi_rules()};
  TheoryPtr apex = share(check_theory(pre, name, rules));
  return {apex, {"inl", l, apex, detail::renaming_map(l->pre(), ln)}, {"inr", r, apex, detail::renaming_map(r->pre(), rn)}};
}

/// The arrow out of a coproduct determined by its two restrictions.
inline Interpretation copair(const Coproduct& c, const Interpretation& f, const Interpretation& g) {
  Interpretation out{"copair", c.apex, f.dst, {}};
  for (const auto& [sym, img] : f.map) out.map.emplace(c.inl.map.at(sym).body.name(), img);
  for (const auto& [sym, img] : g.map) out.map.emplace(c.inr.map.at(sym).body.name(), img);
  return out;
}

struct Coequalizer {
  TheoryPtr apex;
  Interpretation quotient;
};

/// Adjoins I1(c) = I2(c) for every source symbol c, in source order.
inline Coequalizer coequalizer(const Interpretation& i1, const Interpretation& i2, RuleSet rules = {}, Fuel fuel = {},
                               std::string name = {}) {
  if (i1.src->name() != i2.src->name() || i1.dst->name() != i2.dst->name() || i1.dst->size() != i2.dst->size())
    throw Error(ErrorCode::InvalidInterpretation, "coequalizer needs two parallel interpretations");
  Theory t = i1.dst->renamed(name.empty() ? "coeq_" + i1.dst->name() : name);
  std::set<std::string> taken;
  for (const auto& d : t.decls()) taken.insert(d.name);
  for (const auto& d : i1.src->decls()) {
    if (!d.is_symbol()) continue;
    std::string label = detail::primed("coeq_" + d.name, taken);
    taken.insert(label);
    Context ctx = i1(d.ctx);
    Declaration ax = d.kind == DeclKind::TypeSymbol
                         ? Declaration::type_eq(label, ctx, i1.at(d), i2.at(d))
                         : Declaration::term_eq(label, ctx, i1.at(d), i2.at(d), i1(d.type));
    t = extend(t, std::move(ax), rules, fuel);
  }
  TheoryPtr apex = share(std::move(t));
  Interpretation q = identity(i1.dst);
  q.name = "quotient";
  q.dst = apex;
  return {apex, std::move(q)};
}

struct Pushout {
  TheoryPtr apex;
  Interpretation from_target;  // Γ1' -> apex
  Interpretation from_total;   // Γ2 -> apex
  std::map<std::string, std::string> names;  // new declarations of Γ2, old name -> apex name
};

/// Pushout of the inclusion base ⊆ total along `along : base -> Γ1'`.
/// The apex is Γ1' followed by the translated declarations of total - base.
inline Pushout pushout(const TheoryPtr& base, const TheoryPtr& total, const Interpretation& along, RuleSet rules = {},
                       Fuel fuel = {}, std::string name = {}) {
  for (const auto& d : base->decls()) {
    const Declaration* e = total->find(d.name);
    if (!e || !(*e == d)) throw Error(ErrorCode::NotASubtheory, "'" + d.name + "' of " + base->name() + " is not in " + total->name(), d.name);
  }
  const TheoryPtr& target = along.dst;
  Theory t = target->renamed(name.empty() ? "pushout_" + total->name() + "_" + target->name() : name);
  std::set<std::string> taken;
  for (const auto& d : t.decls()) taken.insert(d.name);
  SymbolMap tilde = along.map;
  std::map<std::string, std::string> names;
  for (const auto& d : total->decls()) {
    if (base->pre().contains(d.name)) continue;
    std::string fresh = detail::primed(d.name, taken);
    taken.insert(fresh);
    names.emplace(d.name, fresh);
    Declaration r = d.map_exprs([&tilde](const Expr& e) { return translate(e, tilde); });
    r.name = fresh;
    t = extend(t, std::move(r), rules, fuel);
    if (d.is_symbol()) tilde.emplace(d.name, SymbolImage{d.params(), apply_to_params(fresh, d)});
  }
  TheoryPtr apex = share(std::move(t));
  Interpretation j1 = identity(target);
  j1.name = "from_target";
  j1.dst = apex;
  Interpretation j2{"from_total", total, apex, std::move(tilde)};
  return {apex, std::move(j1), std::move(j2), std::move(names)};
}

/// The arrow out of a pushout determined by its restrictions to Γ1' and
/// to the total theory.
inline Interpretation pushout_pair(const Pushout& p, const Interpretation& f, const Interpretation& g) {
  Interpretation out{"pair", p.apex, f.dst, f.map};
  for (const auto& [old, fresh] : p.names) {
    auto it = g.map.find(old);
    if (it != g.map.end()) out.map.emplace(fresh, it->second);
  }
  return out;
}

enum class ClauseKind { TypeSymbolPullback, TermSymbolPullback, TypeEqEqualizer, TermEqEqualizer };

inline const char* clause_name(ClauseKind k) {
  switch (k) {
    case ClauseKind::TypeSymbolPullback: return "type-symbol pullback";
    case ClauseKind::TermSymbolPullback: return "term-symbol pullback";
    case ClauseKind::TypeEqEqualizer: return "type-equation equalizer";
    case ClauseKind::TermEqEqualizer: return "term-equation equalizer";
  }
  return "?";
}

/// One step of the inductive presentation: the declaration `decl` added to
/// the prefix before it, classified by arrows from Ty_n or El_n (Ty_{n-1}
/// for a type symbol) into that prefix.
struct LimitClause {
  ClauseKind kind;
  std::string decl;
  std::size_t n = 0;
  std::vector<Interpretation> arrows;
};

namespace detail {

inline TheoryPtr ty_theory(std::ptrdiff_t n) {
  static std::map<std::ptrdiff_t, TheoryPtr> cache_ty;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache_ty[n];
  if (!slot) slot = n < 0 ? share(terminal_theory()) : share(mk_Ty(static_cast<std::size_t>(n)));
  return slot;
}

inline TheoryPtr el_theory(std::size_t n) {
  static std::map<std::size_t, TheoryPtr> cache_el;
  static std::mutex m;
  std::lock_guard<std::mutex> lock(m);
  auto& slot = cache_el[n];
  if (!slot) slot = share(mk_El(n));
  return slot;
}

// Ty_{len-1} -> prefix sending A_j to the j-th context type, with the
// context's variables renamed to x0, x1, ...  `last` adds A_len.
inline SymbolMap classify_context(const Context& ctx, const Expr* last) {
  SymbolMap map;
  Substitution sub;
  std::vector<std::string> params;
  for (std::size_t j = 0; j < ctx.size(); ++j) {
    map.emplace("A" + std::to_string(j), SymbolImage{params, substitute(ctx[j].type, sub)});
    const std::string x = "x" + std::to_string(j);
    sub[ctx[j].var] = Expr::var(x);
    params.push_back(x);
  }
  if (last) map.emplace("A" + std::to_string(ctx.size()), SymbolImage{params, substitute(*last, sub)});
  return map;
}

inline Expr rename_ctx_vars(const Context& ctx, const Expr& e) {
  Substitution sub;
  for (std::size_t j = 0; j < ctx.size(); ++j) sub[ctx[j].var] = Expr::var("x" + std::to_string(j));
  return substitute(e, sub);
}

}  // namespace detail

inline std::vector<LimitClause> limit_presentation(const Theory& g) {
  std::vector<LimitClause> out;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Declaration& d = g[i];
    TheoryPtr prefix = share(TheoryBuilder::make(g.name() + "_prefix" + std::to_string(i), g.pre().prefix(i),
                                                 std::vector<std::size_t>(g.certificate().begin(), g.certificate().begin() + static_cast<std::ptrdiff_t>(i)),
                                                 g.pi_rules()));
    const std::size_t n = d.ctx.size();
    LimitClause c{ClauseKind::TypeSymbolPullback, d.name, n, {}};
    switch (d.kind) {
      case DeclKind::TypeSymbol:
        c.arrows.push_back({"classify_" + d.name, detail::ty_theory(static_cast<std::ptrdiff_t>(n) - 1), prefix,
                            detail::classify_context(d.ctx, nullptr)});
        break;
      case DeclKind::TermSymbol:
        c.kind = ClauseKind::TermSymbolPullback;
        c.arrows.push_back({"classify_" + d.name, detail::ty_theory(static_cast<std::ptrdiff_t>(n)), prefix,
                            detail::classify_context(d.ctx, &d.type)});
        break;
      case DeclKind::TypeEq:
        c.kind = ClauseKind::TypeEqEqualizer;
        c.arrows.push_back({"lhs_" + d.name, detail::ty_theory(static_cast<std::ptrdiff_t>(n)), prefix,
                            detail::classify_context(d.ctx, &d.lhs)});
        c.arrows.push_back({"rhs_" + d.name, detail::ty_theory(static_cast<std::ptrdiff_t>(n)), prefix,
                            detail::classify_context(d.ctx, &d.rhs)});
        break;
      case DeclKind::TermEq: {
        c.kind = ClauseKind::TermEqEqualizer;
        const std::string e = "e" + std::to_string(n);
        std::vector<std::string> params;
        for (std::size_t j = 0; j < n; ++j) params.push_back("x" + std::to_string(j));
        SymbolMap l = detail::classify_context(d.ctx, &d.type);
        SymbolMap r = l;
        l.emplace(e, SymbolImage{params, detail::rename_ctx_vars(d.ctx, d.lhs)});
        r.emplace(e, SymbolImage{params, detail::rename_ctx_vars(d.ctx, d.rhs)});
        c.arrows.push_back({"lhs_" + d.name, detail::el_theory(n), prefix, std::move(l)});
        c.arrows.push_back({"rhs_" + d.name, detail::el_theory(n), prefix, std::move(r)});
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

struct Reconstruction {
  TheoryPtr theory;
  Interpretation to;    // original -> reconstruction
  Interpretation from;  // reconstruction -> original
};

/// Replays the clauses with pushouts and coequalizers starting from the
/// terminal theory.
inline Reconstruction reconstruct(const TheoryPtr& original, const std::vector<LimitClause>& clauses, RuleSet rules = {},
                                  Fuel fuel = {}) {
  TheoryPtr cur = detail::ty_theory(-1);
  SymbolMap to;    // original symbols -> current theory
  SymbolMap from;  // current theory symbols -> original
  for (const auto& c : clauses) {
    const Declaration& d = *original->find(c.decl);
    std::vector<Interpretation> arrows;
    for (const auto& a : c.arrows) {
      Interpretation moved{a.name, a.src, cur, {}};
      for (const auto& [sym, img] : a.map) moved.map.emplace(sym, SymbolImage{img.params, translate(img.body, to)});
      arrows.push_back(std::move(moved));
    }
    std::vector<std::string> xs;
    std::vector<Expr> xv;
    for (std::size_t j = 0; j < c.n; ++j) {
      xs.push_back("x" + std::to_string(j));
      xv.push_back(Expr::var(xs.back()));
    }
    auto adopt = [&](const Pushout& p, const std::string& added) {
      const std::string fresh = p.names.at(added);
      to.emplace(d.name, SymbolImage{d.params(), apply_to_params(fresh, d)});
      from.emplace(fresh, SymbolImage{xs, Expr::app(d.name, xv)});
      cur = p.apex;
    };
    switch (c.kind) {
      case ClauseKind::TypeSymbolPullback: {
        const std::string added = "A" + std::to_string(c.n);
        adopt(pushout(detail::ty_theory(static_cast<std::ptrdiff_t>(c.n) - 1),
                      detail::ty_theory(static_cast<std::ptrdiff_t>(c.n)), arrows[0], rules, fuel, "rebuilt"),
              added);
        break;
      }
      case ClauseKind::TermSymbolPullback: {
        const std::string added = "e" + std::to_string(c.n);
        adopt(pushout(detail::ty_theory(static_cast<std::ptrdiff_t>(c.n)), detail::el_theory(c.n), arrows[0], rules,
                      fuel, "rebuilt"),
              added);
        break;
      }
      case ClauseKind::TypeEqEqualizer:
      case ClauseKind::TermEqEqualizer:
        cur = coequalizer(arrows[0], arrows[1], rules, fuel, "rebuilt").apex;
        break;
    }
  }
  return {cur, {"to_rebuilt", original, cur, std::move(to)}, {"from_rebuilt", cur, original, std::move(from)}};
}

}  // namespace gatc
