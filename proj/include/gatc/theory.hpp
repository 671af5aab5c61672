#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gatc/expr.hpp"

namespace gatc {

struct ContextEntry {
  std::string var;
  Expr type;

  friend bool operator==(const ContextEntry& a, const ContextEntry& b) {
    return a.var == b.var && a.type == b.type;
  }
};

/// A telescope x1 : A1, ..., xn : An.
using Context = std::vector<ContextEntry>;

inline std::vector<std::string> context_vars(const Context& ctx) {
  std::vector<std::string> out;
  out.reserve(ctx.size());
  for (const auto& e : ctx) out.push_back(e.var);
  return out;
}

inline const ContextEntry* context_lookup(const Context& ctx, const std::string& var) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    if (it->var == var) return &*it;
  return nullptr;
}

enum class DeclKind { TypeSymbol, TermSymbol, TypeEq, TermEq };

/// One entry `name : ctx => kind` of a (pre)theory.
///
/// TypeSymbol: no payload.  TermSymbol: `type`.  TypeEq: `lhs = rhs : Type`.
/// TermEq: `lhs = rhs : type`, where `type` may be absent in source and is
/// then inferred from `lhs` during checking.
struct Declaration {
  std::string name;
  bool anonymous = false;
  Context ctx;
  DeclKind kind = DeclKind::TypeSymbol;
  Expr type;
  Expr lhs;
  Expr rhs;

  bool is_symbol() const { return kind == DeclKind::TypeSymbol || kind == DeclKind::TermSymbol; }
  bool is_axiom() const { return !is_symbol(); }
  std::vector<std::string> params() const { return context_vars(ctx); }

  /// Every expression of the boundary, context types first.
  std::vector<Expr> exprs() const {
    std::vector<Expr> out;
    for (const auto& e : ctx) out.push_back(e.type);
    for (const Expr* e : {&type, &lhs, &rhs})
      if (*e) out.push_back(*e);
    return out;
  }

  static Declaration type_symbol(std::string name, Context ctx) {
    Declaration d;
    d.name = std::move(name);
    d.ctx = std::move(ctx);
    d.kind = DeclKind::TypeSymbol;
    return d;
  }
  static Declaration term_symbol(std::string name, Context ctx, Expr type) {
    Declaration d = type_symbol(std::move(name), std::move(ctx));
    d.kind = DeclKind::TermSymbol;
    d.type = std::move(type);
    return d;
  }
  static Declaration type_eq(std::string label, Context ctx, Expr lhs, Expr rhs) {
    Declaration d = type_symbol(std::move(label), std::move(ctx));
    d.kind = DeclKind::TypeEq;
    d.lhs = std::move(lhs);
    d.rhs = std::move(rhs);
    return d;
  }
  static Declaration term_eq(std::string label, Context ctx, Expr lhs, Expr rhs, Expr type = {}) {
    Declaration d = type_eq(std::move(label), std::move(ctx), std::move(lhs), std::move(rhs));
    d.kind = DeclKind::TermEq;
    d.type = std::move(type);
    return d;
  }

  /// Applies `f` to every expression of the boundary.
  template <typename F>
  Declaration map_exprs(F&& f) const {
    Declaration d = *this;
    for (auto& e : d.ctx) e.type = f(e.type);
    for (Expr* e : {&d.type, &d.lhs, &d.rhs})
      if (*e) *e = f(*e);
    return d;
  }

  friend bool operator==(const Declaration& a, const Declaration& b) {
    return a.name == b.name && a.ctx == b.ctx && a.kind == b.kind && a.type == b.type && a.lhs == b.lhs &&
           a.rhs == b.rhs;
  }
};

/// An ordered list of declarations; the order realizes the well-founded
/// relation, so each entry may mention only earlier symbols.
class Pretheory {
 public:
  Pretheory() = default;
  explicit Pretheory(std::vector<Declaration> decls) {
    for (auto& d : decls) push_back(std::move(d));
  }

  const std::vector<Declaration>& decls() const { return decls_; }
  std::size_t size() const { return decls_.size(); }
  const Declaration& operator[](std::size_t i) const { return decls_[i]; }

  void push_back(Declaration d) {
    index_.emplace(d.name, decls_.size());  // first one wins; duplicates are caught by check_theory
    decls_.push_back(std::move(d));
  }

  std::optional<std::size_t> position(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Looks `name` up among the first `limit` declarations.
  const Declaration* find(const std::string& name, std::size_t limit = static_cast<std::size_t>(-1)) const {
    auto pos = position(name);
    if (!pos || *pos >= limit) return nullptr;
    return &decls_[*pos];
  }

  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  std::vector<const Declaration*> symbols() const {
    std::vector<const Declaration*> out;
    for (const auto& d : decls_)
      if (d.is_symbol()) out.push_back(&d);
    return out;
  }

  std::size_t symbol_count() const { return symbols().size(); }
  std::size_t axiom_count() const { return size() - symbol_count(); }

  Pretheory prefix(std::size_t n) const {
    return Pretheory(std::vector<Declaration>(decls_.begin(), decls_.begin() + static_cast<std::ptrdiff_t>(n)));
  }

 private:
  std::vector<Declaration> decls_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Proof;

/// A pretheory whose declarations were each checked over the prefix before
/// them.  Only the checking functions construct one.
class Theory {
 public:
  const std::string& name() const { return name_; }
  const Pretheory& pre() const { return pre_; }
  const std::vector<Declaration>& decls() const { return pre_.decls(); }
  std::size_t size() const { return pre_.size(); }
  const Declaration& operator[](std::size_t i) const { return pre_[i]; }
  const Declaration* find(const std::string& name) const { return pre_.find(name); }
  bool pi_rules() const { return pi_rules_; }

  /// Number of conversion proofs recorded while certifying each declaration.
  const std::vector<std::size_t>& certificate() const { return certificate_; }

  Theory renamed(std::string name) const {
    Theory t = *this;
    t.name_ = std::move(name);
    return t;
  }

 private:
  friend class TheoryBuilder;
  std::string name_;
  Pretheory pre_;
  std::vector<std::size_t> certificate_;
  bool pi_rules_ = false;
};

using TheoryPtr = std::shared_ptr<const Theory>;

/// Applies symbol `name` to the parameters of declaration `d`.
inline Expr apply_to_params(const std::string& name, const Declaration& d) {
  std::vector<Expr> args;
  for (const auto& e : d.ctx) args.push_back(Expr::var(e.var));
  return Expr::app(name, std::move(args));
}

/// Symbol image c(params) -> c(params): the identity on one declaration.
inline SymbolImage identity_image(const Declaration& d) { return SymbolImage{d.params(), apply_to_params(d.name, d)}; }

}  // namespace gatc
