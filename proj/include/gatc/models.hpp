#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gatc/error.hpp"
#include "gatc/gatcat.hpp"
#include "gatc/theory.hpp"

namespace gatc {

/// A finite Set-model on canonical carriers {0, ..., s-1}.  For a type
/// symbol the table maps each instance of its context to a carrier size;
/// for a term symbol it maps each instance to an element.
struct Model {
  std::map<std::string, std::map<std::vector<int>, int>> tables;

  friend bool operator==(const Model&, const Model&) = default;
  friend auto operator<=>(const Model&, const Model&) = default;
};

/// A carrier named by its type symbol and the instance it sits over.
struct Carrier {
  std::string symbol;
  std::vector<int> args;

  friend bool operator==(const Carrier&, const Carrier&) = default;
};

using Env = std::map<std::string, int>;
using Value = std::variant<int, Carrier>;

struct ModelBudget {
  std::size_t max_cells = 2'000'000;
};

/// Evaluation in a possibly partial model.  Anything touching a missing
/// table entry evaluates to nullopt.
class Evaluator {
 public:
  Evaluator(const Pretheory& pre, const Model& m) : pre_(pre), m_(m) {}

  std::optional<int> term(const Expr& e, const Env& env) const {
    switch (e.kind()) {
      case ExprKind::Var: {
        auto it = env.find(e.name());
        if (it == env.end()) throw Error(ErrorCode::ScopeError, "unbound variable '" + e.name() + "'", e.name());
        return it->second;
      }
      case ExprKind::App: {
        const Declaration* d = symbol(e.name());
        if (d->kind != DeclKind::TermSymbol) throw Error(ErrorCode::NotATerm, "'" + e.name() + "' is not a term", e.name());
        auto args = arguments(e, env);
        if (!args) return std::nullopt;
        return lookup(e.name(), *args);
      }
      default:
        throw Error(ErrorCode::RuleDisabled, "models do not interpret binders");
    }
  }

  std::optional<Carrier> type(const Expr& e, const Env& env) const {
    if (e.kind() != ExprKind::App) throw Error(ErrorCode::NotAType, "models do not interpret this type");
    const Declaration* d = symbol(e.name());
    if (d->kind != DeclKind::TypeSymbol) throw Error(ErrorCode::NotAType, "'" + e.name() + "' is not a type", e.name());
    auto args = arguments(e, env);
    if (!args) return std::nullopt;
    return Carrier{e.name(), std::move(*args)};
  }

  std::optional<int> size(const Carrier& c) const { return lookup(c.symbol, c.args); }

  std::optional<int> size_of(const Expr& type_expr, const Env& env) const {
    auto c = type(type_expr, env);
    if (!c) return std::nullopt;
    return size(*c);
  }

  std::optional<Value> eval(const Expr& e, const Env& env) const {
    if (e.kind() == ExprKind::App && symbol(e.name())->kind == DeclKind::TypeSymbol) {
      auto c = type(e, env);
      if (!c) return std::nullopt;
      return Value{*c};
    }
    auto v = term(e, env);
    if (!v) return std::nullopt;
    return Value{*v};
  }

  /// Calls `f(env, values)` for every instance of `ctx` in order.  Returns
  /// false when some carrier on the way is undefined; those branches are
  /// skipped.
  bool instances(const Context& ctx, const std::function<void(const Env&, const std::vector<int>&)>& f) const {
    Env env;
    std::vector<int> vals;
    bool complete = true;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
      if (i == ctx.size()) {
        f(env, vals);
        return;
      }
      auto s = size_of(ctx[i].type, env);
      if (!s) {
        complete = false;
        return;
      }
      for (int v = 0; v < *s; ++v) {
        env[ctx[i].var] = v;
        vals.push_back(v);
        go(i + 1);
        vals.pop_back();
      }
      env.erase(ctx[i].var);
    };
    go(0);
    return complete;
  }

  std::vector<std::vector<int>> instance_list(const Context& ctx) const {
    std::vector<std::vector<int>> out;
    instances(ctx, [&out](const Env&, const std::vector<int>& v) { out.push_back(v); });
    return out;
  }

  /// False when some fully evaluable instance of axiom `d` fails.
  bool axiom_holds(const Declaration& d) const {
    bool ok = true;
    instances(d.ctx, [&](const Env& env, const std::vector<int>&) {
      if (!ok) return;
      if (d.kind == DeclKind::TypeEq) {
        auto a = size_of(d.lhs, env);
        auto b = size_of(d.rhs, env);
        if (a && b && *a != *b) ok = false;
      } else {
        auto a = term(d.lhs, env);
        auto b = term(d.rhs, env);
        if (a && b && *a != *b) ok = false;
      }
    });
    return ok;
  }

 private:
  const Declaration* symbol(const std::string& name) const {
    const Declaration* d = pre_.find(name);
    if (!d) throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + name + "'", name);
    return d;
  }

  std::optional<std::vector<int>> arguments(const Expr& e, const Env& env) const {
    std::vector<int> out;
    for (const auto& a : e.args()) {
      auto v = term(a, env);
      if (!v) return std::nullopt;
      out.push_back(*v);
    }
    return out;
  }

  std::optional<int> lookup(const std::string& sym, const std::vector<int>& args) const {
    auto t = m_.tables.find(sym);
    if (t == m_.tables.end()) return std::nullopt;
    auto it = t->second.find(args);
    if (it == t->second.end()) return std::nullopt;
    return it->second;
  }

  const Pretheory& pre_;
  const Model& m_;
};

inline std::optional<Value> eval(const Theory& t, const Model& m, const Env& env, const Expr& e) {
  return Evaluator(t.pre(), m).eval(e, env);
}

namespace detail {

inline void require_pi_free(const Theory& t) {
  if (t.pi_rules()) throw Error(ErrorCode::RuleDisabled, "models of theories with Pi types are not enumerated");
}

}  // namespace detail

/// Every table total over its instances, every element in range and every
/// axiom satisfied.
inline bool satisfies(const Theory& t, const Model& m) {
  Evaluator ev(t.pre(), m);
  for (const auto& d : t.decls()) {
    if (d.is_axiom()) {
      if (!ev.axiom_holds(d)) return false;
      continue;
    }
    static const std::map<std::vector<int>, int> none;
    auto found = m.tables.find(d.name);
    const auto& table = found == m.tables.end() ? none : found->second;
    std::size_t seen = 0;
    bool ok = true;
    const bool complete = ev.instances(d.ctx, [&](const Env& env, const std::vector<int>& inst) {
      ++seen;
      auto it = table.find(inst);
      if (it == table.end()) {
        ok = false;
        return;
      }
      if (d.kind == DeclKind::TypeSymbol) {
        if (it->second < 0) ok = false;
      } else {
        auto s = ev.size_of(d.type, env);
        if (!s || it->second < 0 || it->second >= *s) ok = false;
      }
    });
    if (!complete || !ok || seen != table.size()) return false;
  }
  return true;
}

/// All models with every carrier of size at most `k`, in the lexicographic
/// order of their choices taken declaration by declaration.
inline std::vector<Model> enumerate_models(const Theory& t, int k, ModelBudget budget = {}) {
  detail::require_pi_free(t);
  if (k < 0) throw Error(ErrorCode::Usage, "carrier bound must be non-negative");
  const auto& decls = t.decls();
  // For each symbol, the axioms whose symbols are all declared by then,
  // checked after every cell of that symbol is filled.
  std::vector<std::vector<std::size_t>> ready(decls.size());
  for (std::size_t j = 0; j < decls.size(); ++j) {
    if (!decls[j].is_axiom()) continue;
    std::size_t last = 0;
    bool any = false;
    for (const auto& e : decls[j].exprs())
      for (const auto& s : symbols_of(e))
        if (auto p = t.pre().position(s)) {
          last = any ? std::max(last, *p) : *p;
          any = true;
        }
    if (any) ready[last].push_back(j);
  }

  std::vector<Model> out;
  Model m;
  Evaluator ev(t.pre(), m);
  std::size_t cells = 0;

  auto pruned = [&](std::size_t i) {
    for (std::size_t j : ready[i])
      if (!ev.axiom_holds(decls[j])) return true;
    return false;
  };

  std::function<void(std::size_t)> decl = [&](std::size_t i) {
    if (i == decls.size()) {
      out.push_back(m);
      return;
    }
    const Declaration& d = decls[i];
    if (d.is_axiom()) {
      if (ev.axiom_holds(d)) decl(i + 1);
      return;
    }
    std::vector<std::vector<int>> insts;
    std::vector<int> bounds;
    ev.instances(d.ctx, [&](const Env& env, const std::vector<int>& inst) {
      insts.push_back(inst);
      bounds.push_back(d.kind == DeclKind::TypeSymbol ? k + 1 : ev.size_of(d.type, env).value_or(0));
    });
    if (insts.empty()) {
      decl(i + 1);
      return;
    }
    auto& table = m.tables[d.name];
    std::function<void(std::size_t)> cell = [&](std::size_t c) {
      if (c == insts.size()) {
        decl(i + 1);
        return;
      }
      for (int v = 0; v < bounds[c]; ++v) {
        if (++cells > budget.max_cells)
          throw Error(ErrorCode::Budget, "model search exceeded " + std::to_string(budget.max_cells) + " table cells");
        table[insts[c]] = v;
        if (!pruned(i)) cell(c + 1);
      }
      table.erase(insts[c]);
    };
    cell(0);
    m.tables.erase(d.name);
  };
  decl(0);
  return out;
}

/// The model of I.src obtained by reading each symbol through I.
inline Model reduct(const Model& m, const Interpretation& i) {
  Model out;
  Evaluator target(i.dst->pre(), m);
  Evaluator self(i.src->pre(), out);
  for (const auto& d : i.src->decls()) {
    if (!d.is_symbol()) continue;
    const Expr body = i.at(d);
    auto& table = out.tables[d.name];
    self.instances(d.ctx, [&](const Env& env, const std::vector<int>& inst) {
      std::optional<int> v = d.kind == DeclKind::TypeSymbol ? target.size_of(body, env) : target.term(body, env);
      if (!v) throw Error(ErrorCode::InvalidInterpretation, "reduct along '" + i.name + "' is undefined at '" + d.name + "'", d.name);
      table[inst] = *v;
    });
    if (table.empty()) out.tables.erase(d.name);
  }
  return out;
}

/// The inclusion of a subtheory as an interpretation.
inline Interpretation inclusion(const TheoryPtr& sub, const TheoryPtr& super) {
  Interpretation i = identity(sub);
  i.name = "incl";
  i.dst = super;
  return i;
}

struct DualityReport {
  std::string construction;
  int bound = 0;
  std::size_t colimit_models = 0;
  std::size_t component_models = 0;  // size of the product, fibred product or equalizer
  bool injective = false;
  bool onto = false;

  bool bijection() const { return injective && onto && colimit_models == component_models; }
};

namespace detail {

template <typename Key>
DualityReport compare_images(std::string what, int k, const std::vector<Model>& colimit, const std::set<Key>& expected,
                             const std::function<Key(const Model&)>& image) {
  DualityReport r;
  r.construction = std::move(what);
  r.bound = k;
  r.colimit_models = colimit.size();
  r.component_models = expected.size();
  std::set<Key> seen;
  bool inside = true;
  for (const auto& m : colimit) {
    Key key = image(m);
    if (!expected.count(key)) inside = false;
    seen.insert(std::move(key));
  }
  r.injective = seen.size() == colimit.size();
  r.onto = inside && seen.size() == expected.size();
  return r;
}

}  // namespace detail

/// Mod(Γ1 ⊔ Γ2) -> Mod(Γ1) × Mod(Γ2) by restriction.
inline DualityReport check_colimit_duality(const Coproduct& c, int k, ModelBudget budget = {}) {
  using Key = std::pair<Model, Model>;
  std::set<Key> product;
  const auto left = enumerate_models(*c.inl.src, k, budget);
  const auto right = enumerate_models(*c.inr.src, k, budget);
  for (const auto& a : left)
    for (const auto& b : right) product.emplace(a, b);
  return detail::compare_images<Key>("coproduct " + c.apex->name(), k, enumerate_models(*c.apex, k, budget), product,
                                     [&c](const Model& m) { return Key{reduct(m, c.inl), reduct(m, c.inr)}; });
}

/// Mod(pushout) -> Mod(Γ1') ×_{Mod(base)} Mod(total) by restriction.
inline DualityReport check_colimit_duality(const Pushout& p, const TheoryPtr& base, const Interpretation& along, int k,
                                           ModelBudget budget = {}) {
  using Key = std::pair<Model, Model>;
  const Interpretation incl = inclusion(base, p.from_total.src);
  std::set<Key> fibred;
  const auto left = enumerate_models(*along.dst, k, budget);
  const auto right = enumerate_models(*p.from_total.src, k, budget);
  for (const auto& a : left) {
    const Model ra = reduct(a, along);
    for (const auto& b : right)
      if (reduct(b, incl) == ra) fibred.emplace(a, b);
  }
  return detail::compare_images<Key>("pushout " + p.apex->name(), k, enumerate_models(*p.apex, k, budget), fibred,
                                     [&p](const Model& m) { return Key{reduct(m, p.from_target), reduct(m, p.from_total)}; });
}

/// Mod(coequalizer) -> {N in Mod(Γ) | N·I1 = N·I2} by restriction.
inline DualityReport check_colimit_duality(const Coequalizer& q, const Interpretation& i1, const Interpretation& i2, int k,
                                           ModelBudget budget = {}) {
  std::set<Model> equalized;
  for (const auto& n : enumerate_models(*i1.dst, k, budget))
    if (reduct(n, i1) == reduct(n, i2)) equalized.insert(n);
  return detail::compare_images<Model>("coequalizer " + q.apex->name(), k, enumerate_models(*q.apex, k, budget), equalized,
                                       [&q](const Model& m) { return reduct(m, q.quotient); });
}

}  // namespace gatc
