#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gatc/error.hpp"
#include "gatc/expr.hpp"
#include "gatc/theory.hpp"

namespace gatc {

enum class Rule { Refl, Symm, Trans, Axiom, Congr, Beta, Eta };

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Refl: return "refl";
    case Rule::Symm: return "symm";
    case Rule::Trans: return "trans";
    case Rule::Axiom: return "axiom";
    case Rule::Congr: return "congr";
    case Rule::Beta: return "beta";
    case Rule::Eta: return "eta";
  }
  return "?";
}

/// An equational derivation lhs = rhs.  Axiom steps name the declaration
/// and the substitution for its context variables.
struct Proof {
  Rule rule = Rule::Refl;
  Expr lhs;
  Expr rhs;
  std::string axiom;
  std::vector<std::pair<std::string, Expr>> subst;
  std::vector<Proof> premises;

  static Proof refl(Expr t) {
    Proof p;
    p.lhs = t;
    p.rhs = std::move(t);
    return p;
  }

  static Proof symm(Proof inner) {
    if (inner.rule == Rule::Refl) return inner;
    if (inner.rule == Rule::Symm) return std::move(inner.premises.front());
    Proof p;
    p.rule = Rule::Symm;
    p.lhs = inner.rhs;
    p.rhs = inner.lhs;
    p.premises.push_back(std::move(inner));
    return p;
  }

  /// Chains steps, dropping reflexive ones and flattening nested chains.
  static Proof trans(std::vector<Proof> steps) {
    std::vector<Proof> flat;
    for (auto& s : steps) {
      if (s.rule == Rule::Refl) continue;
      if (s.rule == Rule::Trans) {
        for (auto& q : s.premises) flat.push_back(std::move(q));
      } else {
        flat.push_back(std::move(s));
      }
    }
    if (flat.empty()) return refl(steps.empty() ? Expr{} : steps.front().lhs);
    if (flat.size() == 1) return std::move(flat.front());
    Proof p;
    p.rule = Rule::Trans;
    p.lhs = flat.front().lhs;
    p.rhs = flat.back().rhs;
    p.premises = std::move(flat);
    return p;
  }

  std::size_t count(Rule r) const {
    std::size_t n = rule == r ? 1 : 0;
    for (const auto& q : premises) n += q.count(r);
    return n;
  }

  std::size_t axiom_instances() const { return count(Rule::Axiom); }

  /// Rules used anywhere in the derivation.
  std::vector<Rule> rules_used() const {
    std::vector<Rule> out;
    for (Rule r : {Rule::Refl, Rule::Symm, Rule::Trans, Rule::Axiom, Rule::Congr, Rule::Beta, Rule::Eta})
      if (count(r) > 0) out.push_back(r);
    return out;
  }
};

/// Re-checks a derivation step by step against the axioms among the first
/// `limit` declarations of `sig`.  Throws on the first bad step.
inline void replay(const Proof& p, const Pretheory& sig, std::size_t limit = static_cast<std::size_t>(-1)) {
  auto fail = [&p](const std::string& why) {
    throw Error(ErrorCode::InvalidInterpretation, std::string("proof replay failed at ") + rule_name(p.rule) + ": " + why);
  };
  if (!p.lhs || !p.rhs) fail("missing conclusion");
  for (const auto& q : p.premises) replay(q, sig, limit);
  switch (p.rule) {
    case Rule::Refl:
      if (p.lhs != p.rhs) fail("sides differ");
      break;
    case Rule::Symm:
      if (p.premises.size() != 1 || p.premises[0].lhs != p.rhs || p.premises[0].rhs != p.lhs) fail("bad premise");
      break;
    case Rule::Trans: {
      if (p.premises.empty() || p.premises.front().lhs != p.lhs || p.premises.back().rhs != p.rhs) fail("bad ends");
      for (std::size_t i = 0; i + 1 < p.premises.size(); ++i)
        if (p.premises[i].rhs != p.premises[i + 1].lhs) fail("broken chain");
      break;
    }
    case Rule::Axiom: {
      const Declaration* ax = sig.find(p.axiom, limit);
      if (!ax || !ax->is_axiom()) fail("unknown axiom '" + p.axiom + "'");
      Substitution sub;
      for (const auto& [v, t] : p.subst) sub.emplace(v, t);
      for (const auto& e : ax->ctx)
        if (!sub.count(e.var)) fail("substitution misses '" + e.var + "'");
      if (sub.size() != ax->ctx.size()) fail("substitution has extra variables");
      if (substitute(ax->lhs, sub) != p.lhs || substitute(ax->rhs, sub) != p.rhs) fail("not an instance of " + p.axiom);
      break;
    }
    case Rule::Congr: {
      if (p.lhs.kind() != p.rhs.kind() || p.lhs.args().size() != p.rhs.args().size()) fail("heads differ");
      if (p.lhs.kind() == ExprKind::App && p.lhs.name() != p.rhs.name()) fail("symbols differ");
      if (p.lhs.args().empty() || p.premises.size() != p.lhs.args().size()) fail("premise count");
      for (std::size_t i = 0; i < p.premises.size(); ++i)
        if (p.premises[i].lhs != p.lhs.arg(i) || p.premises[i].rhs != p.rhs.arg(i)) fail("premise mismatch");
      break;
    }
    case Rule::Beta: {
      const Expr& l = p.lhs;
      if (l.kind() != ExprKind::Ap || l.arg(0).kind() != ExprKind::Lam) fail("not a redex");
      if (open(l.arg(0).arg(1), l.arg(1)) != p.rhs) fail("wrong contractum");
      break;
    }
    case Rule::Eta: {
      const Expr& l = p.lhs;
      if (l.kind() != ExprKind::Lam) fail("not an abstraction");
      const Expr& body = l.arg(1);
      if (body.kind() != ExprKind::Ap || body.arg(1) != Expr::bvar(0) || has_loose_index(body.arg(0), 0))
        fail("body is not an eta-expansion");
      if (lower(body.arg(0)) != p.rhs) fail("wrong contractum");
      break;
    }
  }
}

}  // namespace gatc
