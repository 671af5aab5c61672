#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gatc/expr.hpp"
#include "gatc/proof.hpp"
#include "gatc/theory.hpp"

namespace gatc {

struct RuleSet {
  bool pi = false;

  static RuleSet base() { return RuleSet{}; }
  static RuleSet with_pi() { return RuleSet{true}; }
  friend bool operator==(const RuleSet&, const RuleSet&) = default;
};

struct Fuel {
  std::size_t max_eq_nodes = 10000;
  std::size_t max_iterations = 8;
};

struct EqVerdict {
  bool proved = false;
  // Saturation closed without reaching the goal, as opposed to running out
  // of fuel.  Never a refutation either way.
  bool saturated = false;
  Proof proof;
  std::size_t nodes = 0;
  std::size_t rounds = 0;
};

/// Hash-consed congruence closure over Expr with a proof forest.
class EGraph {
 public:
  using Id = std::uint32_t;

  enum class Reason { Axiom, Congr, Beta, Eta };

  std::size_t size() const { return terms_.size(); }
  const Expr& term(Id id) const { return terms_[id]; }
  const std::vector<Id>& children(Id id) const { return kids_[id]; }

  std::optional<Id> lookup(const Expr& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Id add(const Expr& e) {
    if (auto found = lookup(e)) return *found;
    std::vector<Id> kids;
    kids.reserve(e.args().size());
    for (const auto& a : e.args()) kids.push_back(add(a));
    const Id id = static_cast<Id>(terms_.size());
    terms_.push_back(e);
    kids_.push_back(std::move(kids));
    ops_.push_back(op_of(e));
    uf_.push_back(id);
    members_.push_back({id});
    pf_parent_.push_back(-1);
    pf_edge_.push_back(0);
    index_.emplace(e, id);
    return id;
  }

  Id find(Id id) const {
    while (uf_[id] != id) id = uf_[id];
    return id;
  }

  bool same(Id a, Id b) const { return find(a) == find(b); }

  /// Members of the class of `id`, in ascending id order.
  const std::vector<Id>& members(Id id) const { return members_[find(id)]; }

  bool merge(Id a, Id b, Reason why, std::string axiom = {}, std::vector<std::pair<std::string, Expr>> subst = {}) {
    Id ra = find(a), rb = find(b);
    if (ra == rb) return false;
    edges_.push_back(Edge{why, a, b, std::move(axiom), std::move(subst)});
    reroot(a);
    pf_parent_[a] = static_cast<std::int64_t>(b);
    pf_edge_[a] = edges_.size() - 1;
    if (members_[ra].size() > members_[rb].size()) std::swap(ra, rb);
    uf_[ra] = rb;
    std::vector<Id> merged;
    merged.reserve(members_[ra].size() + members_[rb].size());
    std::merge(members_[ra].begin(), members_[ra].end(), members_[rb].begin(), members_[rb].end(),
               std::back_inserter(merged));
    members_[rb] = std::move(merged);
    members_[ra].clear();
    return true;
  }

  /// Closes under congruence; returns the number of merges performed.
  std::size_t rebuild() {
    std::size_t merges = 0;
    for (bool changed = true; changed;) {
      changed = false;
      std::map<std::vector<std::uint64_t>, Id> sigs;
      for (Id id = 0; id < terms_.size(); ++id) {
        if (kids_[id].empty()) continue;
        std::vector<std::uint64_t> key{ops_[id]};
        for (Id k : kids_[id]) key.push_back(find(k));
        auto [it, fresh] = sigs.emplace(std::move(key), id);
        if (!fresh && merge(it->second, id, Reason::Congr)) {
          ++merges;
          changed = true;
        }
      }
    }
    return merges;
  }

  /// A derivation of term(a) = term(b); the two must share a class.
  Proof explain(Id a, Id b) {
    if (a == b) return Proof::refl(terms_[a]);
    std::unordered_map<Id, std::size_t> depth_of;
    std::size_t d = 0;
    for (std::int64_t x = a; x != -1; x = pf_parent_[static_cast<Id>(x)]) depth_of[static_cast<Id>(x)] = d++;
    std::vector<Proof> down;
    Id lca = b;
    while (!depth_of.count(lca)) {
      Id up = static_cast<Id>(pf_parent_[lca]);
      down.push_back(step(up, pf_edge_[lca]));
      lca = up;
    }
    std::vector<Proof> steps;
    for (Id x = a; x != lca; x = static_cast<Id>(pf_parent_[x])) steps.push_back(step(x, pf_edge_[x]));
    for (auto it = down.rbegin(); it != down.rend(); ++it) steps.push_back(std::move(*it));
    return Proof::trans(std::move(steps));
  }

 private:
  struct Edge {
    Reason why;
    Id from;
    Id to;
    std::string axiom;
    std::vector<std::pair<std::string, Expr>> subst;
  };

  std::uint64_t op_of(const Expr& e) {
    std::string key(1, static_cast<char>('0' + static_cast<int>(e.kind())));
    if (e.kind() == ExprKind::Var || e.kind() == ExprKind::App) key += e.name();
    if (e.kind() == ExprKind::BVar) key += std::to_string(e.index());
    key += '/' + std::to_string(e.args().size());
    return op_ids_.emplace(key, op_ids_.size()).first->second;
  }

  void reroot(Id x) {
    std::int64_t prev = -1;
    std::size_t prev_edge = 0;
    std::int64_t cur = x;
    while (cur != -1) {
      const Id c = static_cast<Id>(cur);
      const std::int64_t next = pf_parent_[c];
      const std::size_t next_edge = pf_edge_[c];
      pf_parent_[c] = prev;
      pf_edge_[c] = prev_edge;
      prev = cur;
      prev_edge = next_edge;
      cur = next;
    }
  }

  // Proof of term(u) = term(v) across the forest edge between them.
  Proof step(Id u, std::size_t edge) {
    Proof base = edge_proof(edge);
    return edges_[edge].from == u ? base : Proof::symm(std::move(base));
  }

  const Proof& edge_proof(std::size_t edge) {
    if (edge_proofs_.size() < edges_.size()) edge_proofs_.resize(edges_.size());
    if (edge_proofs_[edge]) return *edge_proofs_[edge];
    const Edge& e = edges_[edge];
    Proof p;
    p.lhs = terms_[e.from];
    p.rhs = terms_[e.to];
    switch (e.why) {
      case Reason::Axiom:
        p.rule = Rule::Axiom;
        p.axiom = e.axiom;
        p.subst = e.subst;
        break;
      case Reason::Beta: p.rule = Rule::Beta; break;
      case Reason::Eta: p.rule = Rule::Eta; break;
      case Reason::Congr: {
        p.rule = Rule::Congr;
        const auto kf = kids_[e.from];
        const auto kt = kids_[e.to];
        for (std::size_t i = 0; i < kf.size(); ++i) p.premises.push_back(explain(kf[i], kt[i]));
        break;
      }
    }
    edge_proofs_[edge] = std::move(p);
    return *edge_proofs_[edge];
  }

  std::vector<Expr> terms_;
  std::vector<std::vector<Id>> kids_;
  std::vector<std::uint64_t> ops_;
  std::unordered_map<std::string, std::uint64_t> op_ids_;
  std::unordered_map<Expr, Id, ExprHash> index_;
  std::vector<Id> uf_;
  std::vector<std::vector<Id>> members_;
  std::vector<std::int64_t> pf_parent_;
  std::vector<std::size_t> pf_edge_;
  std::vector<Edge> edges_;
  std::vector<std::optional<Proof>> edge_proofs_;
};

/// Fuel-bounded saturation: axiom e-matching, congruence closure and, under
/// the Pi rules, beta/eta.  Everything iterates in insertion order.
class EqEngine {
 public:
  EqEngine(const Pretheory& sig, std::size_t limit, RuleSet rules, Fuel fuel) : rules_(rules), fuel_(fuel) {
    limit = std::min(limit, sig.size());
    for (std::size_t i = 0; i < limit; ++i) {
      const Declaration& d = sig[i];
      if (!d.is_axiom()) continue;
      std::set<std::string> vars;
      for (const auto& e : d.ctx) vars.insert(e.var);
      for (const Expr* side : {&d.lhs, &d.rhs}) {
        if (side->kind() == ExprKind::Var) continue;
        std::set<std::string> fv;
        for (auto& v : free_vars(*side)) fv.insert(v);
        if (!std::includes(fv.begin(), fv.end(), vars.begin(), vars.end())) continue;
        patterns_.push_back(Pattern{static_cast<std::uint32_t>(i), &d, *side, vars});
      }
    }
  }

  EqVerdict run(const Expr& lhs, const Expr& rhs) {
    EqVerdict v;
    if (lhs == rhs) {
      v.proved = true;
      v.proof = Proof::refl(lhs);
      return v;
    }
    const auto a = g_.add(lhs);
    const auto b = g_.add(rhs);
    g_.rebuild();
    auto finish = [&](bool saturated) {
      v.nodes = g_.size();
      if (g_.same(a, b)) {
        v.proved = true;
        v.proof = g_.explain(a, b);
      } else {
        v.saturated = saturated;
      }
      return v;
    };
    if (g_.same(a, b)) return finish(false);
    if (g_.size() > fuel_.max_eq_nodes) return finish(false);

    for (std::size_t round = 1; round <= fuel_.max_iterations; ++round) {
      v.rounds = round;
      const std::size_t before = g_.size();
      auto actions = collect();
      if (actions.empty()) return finish(true);
      bool progress = false;
      bool out_of_fuel = false;
      for (auto& act : actions) {
        const auto l = g_.add(act.lhs);
        const auto r = g_.add(act.rhs);
        if (g_.merge(l, r, act.why, act.axiom, act.subst)) progress = true;
        if (g_.size() > fuel_.max_eq_nodes) {
          out_of_fuel = true;
          break;
        }
      }
      if (g_.rebuild() > 0) progress = true;
      if (g_.size() != before) progress = true;
      if (g_.same(a, b)) return finish(false);
      if (out_of_fuel) return finish(false);
      if (!progress) return finish(true);
    }
    return finish(false);
  }

 private:
  struct Pattern {
    std::uint32_t decl;
    const Declaration* ax;
    Expr side;
    std::set<std::string> vars;
  };

  struct Action {
    EGraph::Reason why;
    Expr lhs;
    Expr rhs;
    std::string axiom;
    std::vector<std::pair<std::string, Expr>> subst;
  };

  using Binding = std::map<std::string, EGraph::Id>;
  using Cont = std::function<void(Binding&)>;

  std::vector<Action> collect() {
    std::vector<Action> out;
    const auto n = static_cast<EGraph::Id>(g_.size());
    for (EGraph::Id id = 0; id < n; ++id) {
      if (g_.find(id) != id) continue;
      for (const auto& pat : patterns_) {
        Binding sigma;
        match_class(pat, pat.side, id, 0, sigma, [&](Binding& s) { instance(pat, s, out); });
      }
    }
    if (rules_.pi) {
      for (EGraph::Id id = 0; id < n; ++id) {
        const Expr& t = g_.term(id);
        if (t.kind() == ExprKind::Ap) beta(id, out);
        if (t.kind() == ExprKind::Lam) eta(id, out);
      }
    }
    return out;
  }

  void instance(const Pattern& pat, const Binding& s, std::vector<Action>& out) {
    std::vector<std::uint32_t> key{pat.decl};
    Substitution sub;
    std::vector<std::pair<std::string, Expr>> ordered;
    for (const auto& e : pat.ax->ctx) {
      const auto id = s.at(e.var);
      key.push_back(id);
      sub.emplace(e.var, g_.term(id));
      ordered.emplace_back(e.var, g_.term(id));
    }
    if (!seen_.insert(std::move(key)).second) return;
    Expr l = substitute(pat.ax->lhs, sub);
    Expr r = substitute(pat.ax->rhs, sub);
    auto li = g_.lookup(l), ri = g_.lookup(r);
    if (li && ri && g_.same(*li, *ri)) return;
    out.push_back(Action{EGraph::Reason::Axiom, std::move(l), std::move(r), pat.ax->name, std::move(ordered)});
  }

  void match_class(const Pattern& pat, const Expr& p, EGraph::Id cls, std::size_t depth, Binding& s, const Cont& k) {
    if (p.kind() == ExprKind::Var && pat.vars.count(p.name())) {
      auto it = s.find(p.name());
      if (it != s.end()) {
        if (g_.same(it->second, cls)) k(s);
        return;
      }
      for (auto m : g_.members(cls)) {
        if (depth > 0 && g_.term(m).loose() > 0) continue;
        s[p.name()] = m;
        k(s);
        s.erase(p.name());
        return;
      }
      return;
    }
    const std::vector<EGraph::Id> ms = g_.members(cls);
    for (auto m : ms) match_node(pat, p, m, depth, s, k);
  }

  void match_node(const Pattern& pat, const Expr& p, EGraph::Id m, std::size_t depth, Binding& s, const Cont& k) {
    const Expr& t = g_.term(m);
    if (t.kind() != p.kind()) return;
    switch (p.kind()) {
      case ExprKind::Var:
        if (t.name() == p.name()) k(s);
        return;
      case ExprKind::BVar:
        if (t.index() == p.index()) k(s);
        return;
      case ExprKind::App:
        if (t.name() != p.name() || t.args().size() != p.args().size()) return;
        break;
      default: break;
    }
    match_args(pat, p, m, 0, depth, s, k);
  }

  void match_args(const Pattern& pat, const Expr& p, EGraph::Id m, std::size_t i, std::size_t depth, Binding& s,
                  const Cont& k) {
    if (i == p.args().size()) {
      k(s);
      return;
    }
    const std::size_t d = (p.is_binder() && i == 1) ? depth + 1 : depth;
    const auto child = g_.find(g_.children(m)[i]);
    match_class(pat, p.arg(i), child, d, s,
                [&, i](Binding& s2) { match_args(pat, p, m, i + 1, depth, s2, k); });
  }

  void beta(EGraph::Id ap, std::vector<Action>& out) {
    const auto fun = g_.children(ap)[0];
    const auto arg = g_.children(ap)[1];
    const std::vector<EGraph::Id> ms = g_.members(fun);
    for (auto lam : ms) {
      const Expr& l = g_.term(lam);
      if (l.kind() != ExprKind::Lam) continue;
      if (!seen_.insert({0xBE7A0000u, lam, arg}).second) continue;
      Expr redex = Expr::ap(l, g_.term(arg));
      Expr contractum = open(l.arg(1), g_.term(arg));
      out.push_back(Action{EGraph::Reason::Beta, std::move(redex), std::move(contractum), {}, {}});
    }
  }

  void eta(EGraph::Id lam, std::vector<Action>& out) {
    const Expr& l = g_.term(lam);
    auto zero = g_.lookup(Expr::bvar(0));
    if (!zero) return;
    const std::vector<EGraph::Id> ms = g_.members(g_.children(lam)[1]);
    for (auto body : ms) {
      const Expr& b = g_.term(body);
      if (b.kind() != ExprKind::Ap) continue;
      if (!g_.same(g_.children(body)[1], *zero)) continue;
      const Expr& head = b.arg(0);
      if (has_loose_index(head, 0)) continue;
      if (!seen_.insert({0xE7A00000u, lam, body}).second) continue;
      Expr expanded = Expr::lam_raw(l.name(), l.arg(0), Expr::ap(head, Expr::bvar(0)));
      out.push_back(Action{EGraph::Reason::Eta, std::move(expanded), lower(head), {}, {}});
    }
  }

  RuleSet rules_;
  Fuel fuel_;
  EGraph g_;
  std::vector<Pattern> patterns_;
  std::set<std::vector<std::uint32_t>> seen_;
};

/// Decides lhs = rhs among the first `limit` declarations of `sig`, within
/// fuel.  A proved verdict carries a derivation that `replay` accepts.
inline EqVerdict eq_check(const Pretheory& sig, std::size_t limit, const Expr& lhs, const Expr& rhs, RuleSet rules = {},
                          Fuel fuel = {}) {
  EqEngine engine(sig, limit, rules, fuel);
  return engine.run(lhs, rhs);
}

inline EqVerdict eq_check(const Pretheory& sig, const Expr& lhs, const Expr& rhs, RuleSet rules = {}, Fuel fuel = {}) {
  return eq_check(sig, sig.size(), lhs, rhs, rules, fuel);
}

}  // namespace gatc
