#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gatc/error.hpp"

namespace gatc {

// Expressions are locally nameless: free variables carry names, variables
// bound by Pi/lam are de Bruijn indices.  Binder names survive only as
// printing hints, so alpha-equivalent terms compare equal structurally.

enum class ExprKind : unsigned char { Var, BVar, App, Pi, Lam, Ap };

class Expr {
 public:
  Expr() = default;

  static Expr var(std::string name) { return make(ExprKind::Var, std::move(name), 0, {}); }
  static Expr bvar(std::size_t index) { return make(ExprKind::BVar, {}, index, {}); }
  static Expr app(std::string symbol, std::vector<Expr> args = {}) {
    return make(ExprKind::App, std::move(symbol), 0, std::move(args));
  }
  // Raw binder constructors: `body` already refers to the binder as BVar(0).
  static Expr pi_raw(std::string hint, Expr dom, Expr body) {
    return make(ExprKind::Pi, std::move(hint), 0, {std::move(dom), std::move(body)});
  }
  static Expr lam_raw(std::string hint, Expr dom, Expr body) {
    return make(ExprKind::Lam, std::move(hint), 0, {std::move(dom), std::move(body)});
  }
  static Expr ap(Expr fun, Expr arg) { return make(ExprKind::Ap, {}, 0, {std::move(fun), std::move(arg)}); }

  // Named binder constructors: occurrences of Var(x) in `body` become bound.
  static Expr pi(const std::string& x, Expr dom, const Expr& body);
  static Expr lam(const std::string& x, Expr dom, const Expr& body);

  explicit operator bool() const { return node_ != nullptr; }
  bool identical(const Expr& other) const { return node_ == other.node_; }

  ExprKind kind() const { return node_->kind; }
  bool is_var() const { return node_->kind == ExprKind::Var; }
  bool is_app() const { return node_->kind == ExprKind::App; }
  bool is_binder() const { return node_->kind == ExprKind::Pi || node_->kind == ExprKind::Lam; }

  /// Variable name, symbol name, or binder hint depending on the kind.
  const std::string& name() const { return node_->name; }
  std::size_t index() const { return node_->index; }
  const std::vector<Expr>& args() const { return node_->args; }
  const Expr& arg(std::size_t i) const { return node_->args[i]; }
  std::size_t hash() const { return node_->hash; }

  /// One more than the largest loose de Bruijn index, zero when closed.
  std::size_t loose() const { return node_->loose; }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : node_->args) n += a.size();
    return n;
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.node_->hash != b.node_->hash || a.node_->kind != b.node_->kind) return false;
    switch (a.node_->kind) {
      case ExprKind::Var:
      case ExprKind::App:
        if (a.node_->name != b.node_->name) return false;
        break;
      case ExprKind::BVar:
        return a.node_->index == b.node_->index;
      default:
        break;
    }
    return a.node_->args == b.node_->args;
  }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  struct Node {
    ExprKind kind;
    std::string name;
    std::size_t index = 0;
    std::vector<Expr> args;
    std::size_t hash = 0;
    std::size_t loose = 0;
  };

  static Expr make(ExprKind kind, std::string name, std::size_t index, std::vector<Expr> args) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->name = std::move(name);
    n->index = index;
    n->args = std::move(args);
    std::size_t h = std::hash<int>{}(static_cast<int>(kind)) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    if (kind == ExprKind::Var || kind == ExprKind::App) mix(std::hash<std::string>{}(n->name));
    if (kind == ExprKind::BVar) {
      mix(index);
      n->loose = index + 1;
    }
    const bool binds = kind == ExprKind::Pi || kind == ExprKind::Lam;
    for (std::size_t i = 0; i < n->args.size(); ++i) {
      mix(n->args[i].hash());
      std::size_t l = n->args[i].loose();
      if (binds && i == 1) l = l > 0 ? l - 1 : 0;
      n->loose = std::max(n->loose, l);
    }
    n->hash = h;
    Expr e;
    e.node_ = std::move(n);
    return e;
  }

  std::shared_ptr<const Node> node_;
};

struct ExprHash {
  std::size_t operator()(const Expr& e) const { return e.hash(); }
};

namespace detail {

inline Expr rebuild(const Expr& e, std::vector<Expr> args) {
  switch (e.kind()) {
    case ExprKind::App: return Expr::app(e.name(), std::move(args));
    case ExprKind::Pi: return Expr::pi_raw(e.name(), std::move(args[0]), std::move(args[1]));
    case ExprKind::Lam: return Expr::lam_raw(e.name(), std::move(args[0]), std::move(args[1]));
    case ExprKind::Ap: return Expr::ap(std::move(args[0]), std::move(args[1]));
    default: return e;
  }
}

// Generic bottom-up map that tracks the number of enclosing binders.
template <typename Leaf>
Expr map_depth(const Expr& e, std::size_t depth, const Leaf& leaf) {
  if (e.kind() == ExprKind::Var || e.kind() == ExprKind::BVar) return leaf(e, depth);
  if (e.args().empty()) return e;
  std::vector<Expr> args;
  args.reserve(e.args().size());
  bool changed = false;
  for (std::size_t i = 0; i < e.args().size(); ++i) {
    const std::size_t d = (e.is_binder() && i == 1) ? depth + 1 : depth;
    args.push_back(map_depth(e.arg(i), d, leaf));
    changed = changed || !args.back().identical(e.arg(i));
  }
  return changed ? rebuild(e, std::move(args)) : e;
}

}  // namespace detail

/// Shifts loose indices >= cutoff up by `by`.
inline Expr lift(const Expr& e, std::size_t by, std::size_t cutoff = 0) {
  if (by == 0 || e.loose() <= cutoff) return e;
  return detail::map_depth(e, cutoff, [by](const Expr& leaf, std::size_t depth) {
    if (leaf.kind() == ExprKind::BVar && leaf.index() >= depth) return Expr::bvar(leaf.index() + by);
    return leaf;
  });
}

/// Replaces the outermost bound variable of a binder body by `value`.
inline Expr open(const Expr& body, const Expr& value) {
  if (body.loose() == 0) return body;
  return detail::map_depth(body, 0, [&value](const Expr& leaf, std::size_t depth) {
    if (leaf.kind() != ExprKind::BVar || leaf.index() < depth) return leaf;
    if (leaf.index() == depth) return lift(value, depth);
    return Expr::bvar(leaf.index() - 1);
  });
}

/// Turns free occurrences of `x` into the index of a new enclosing binder.
inline Expr abstract(const Expr& e, const std::string& x) {
  return detail::map_depth(e, 0, [&x](const Expr& leaf, std::size_t depth) {
    if (leaf.kind() == ExprKind::Var && leaf.name() == x) return Expr::bvar(depth);
    if (leaf.kind() == ExprKind::BVar && leaf.index() >= depth) return Expr::bvar(leaf.index() + 1);
    return leaf;
  });
}

inline bool has_loose_index(const Expr& e, std::size_t index, std::size_t depth = 0) {
  if (e.loose() <= index + depth) return false;
  if (e.kind() == ExprKind::BVar) return e.index() == index + depth;
  for (std::size_t i = 0; i < e.args().size(); ++i) {
    const std::size_t d = (e.is_binder() && i == 1) ? depth + 1 : depth;
    if (has_loose_index(e.arg(i), index, d)) return true;
  }
  return false;
}

/// Removes an unused outermost binder: loose indices above 0 drop by one.
inline Expr lower(const Expr& e) {
  if (has_loose_index(e, 0)) throw Error(ErrorCode::ScopeError, "cannot lower a term that uses its binder");
  if (e.loose() == 0) return e;
  return detail::map_depth(e, 0, [](const Expr& leaf, std::size_t depth) {
    if (leaf.kind() == ExprKind::BVar && leaf.index() > depth) return Expr::bvar(leaf.index() - 1);
    return leaf;
  });
}

inline Expr Expr::pi(const std::string& x, Expr dom, const Expr& body) {
  return pi_raw(x, std::move(dom), abstract(body, x));
}
inline Expr Expr::lam(const std::string& x, Expr dom, const Expr& body) {
  return lam_raw(x, std::move(dom), abstract(body, x));
}

/// Free variables in first-occurrence order.
inline std::vector<std::string> free_vars(const Expr& e) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  std::function<void(const Expr&)> walk = [&](const Expr& t) {
    if (t.kind() == ExprKind::Var) {
      if (seen.insert(t.name()).second) out.push_back(t.name());
      return;
    }
    for (const auto& a : t.args()) walk(a);
  };
  walk(e);
  return out;
}

inline bool occurs_free(const Expr& e, const std::string& x) {
  if (e.kind() == ExprKind::Var) return e.name() == x;
  for (const auto& a : e.args())
    if (occurs_free(a, x)) return true;
  return false;
}

/// Symbols applied anywhere in `e`, first-occurrence order.
inline std::vector<std::string> symbols_of(const Expr& e) {
  std::vector<std::string> out;
  std::function<void(const Expr&)> walk = [&](const Expr& t) {
    if (t.kind() == ExprKind::App && std::find(out.begin(), out.end(), t.name()) == out.end())
      out.push_back(t.name());
    for (const auto& a : t.args()) walk(a);
  };
  walk(e);
  return out;
}

using Substitution = std::map<std::string, Expr>;

/// Simultaneous substitution of free variables.  Unmapped variables stay.
/// Bound variables are indices, so no capture can occur.
inline Expr substitute(const Expr& e, const Substitution& sub) {
  if (sub.empty()) return e;
  return detail::map_depth(e, 0, [&sub](const Expr& leaf, std::size_t depth) {
    if (leaf.kind() != ExprKind::Var) return leaf;
    auto it = sub.find(leaf.name());
    return it == sub.end() ? leaf : lift(it->second, depth);
  });
}

/// An expression in the context of a symbol's argument telescope.
struct SymbolImage {
  std::vector<std::string> params;
  Expr body;

  Expr instantiate(const std::vector<Expr>& args) const {
    if (args.size() != params.size())
      throw Error(ErrorCode::ArityMismatch, "image expects " + std::to_string(params.size()) +
                                                " arguments, got " + std::to_string(args.size()));
    Substitution sub;
    for (std::size_t i = 0; i < params.size(); ++i) sub.emplace(params[i], args[i]);
    return substitute(body, sub);
  }

  friend bool operator==(const SymbolImage& a, const SymbolImage& b) {
    return a.params == b.params && a.body == b.body;
  }
};

using SymbolMap = std::map<std::string, SymbolImage>;

/// Extends a symbol assignment to all expressions: identity on variables,
/// c(args) becomes map(c) with its parameters replaced by translated args.
inline Expr translate(const Expr& e, const SymbolMap& map) {
  switch (e.kind()) {
    case ExprKind::Var:
    case ExprKind::BVar:
      return e;
    case ExprKind::App: {
      auto it = map.find(e.name());
      if (it == map.end()) throw Error(ErrorCode::UnknownSymbol, "no image for symbol '" + e.name() + "'", e.name());
      std::vector<Expr> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(translate(a, map));
      return it->second.instantiate(args);
    }
    default: {
      std::vector<Expr> args;
      for (const auto& a : e.args()) args.push_back(translate(a, map));
      return detail::rebuild(e, std::move(args));
    }
  }
}

/// The hypothesizing transform: every application c(args) becomes
/// c'(x0, args') with c' = rename(c) (identity when unmapped).
inline Expr hypothesize(const Expr& e, const std::string& x0,
                        const std::map<std::string, std::string>& rename = {}) {
  if (occurs_free(e, x0))
    throw Error(ErrorCode::VariableClash, "variable '" + x0 + "' already occurs in the expression", x0);
  std::function<Expr(const Expr&)> go = [&](const Expr& t) -> Expr {
    switch (t.kind()) {
      case ExprKind::Var:
      case ExprKind::BVar:
        return t;
      case ExprKind::App: {
        std::vector<Expr> args;
        args.reserve(t.args().size() + 1);
        args.push_back(Expr::var(x0));
        for (const auto& a : t.args()) args.push_back(go(a));
        auto it = rename.find(t.name());
        return Expr::app(it == rename.end() ? t.name() : it->second, std::move(args));
      }
      default: {
        std::vector<Expr> args;
        for (const auto& a : t.args()) args.push_back(go(a));
        return detail::rebuild(t, std::move(args));
      }
    }
  };
  return go(e);
}

/// Picks `base`, or `base_1`, `base_2`, ... avoiding every name in `taken`.
template <typename Pred>
std::string fresh_name(const std::string& base, Pred taken) {
  if (!taken(base)) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!taken(candidate)) return candidate;
  }
}

}  // namespace gatc
