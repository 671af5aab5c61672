#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gatc/egraph.hpp"
#include "gatc/error.hpp"
#include "gatc/expr.hpp"
#include "gatc/proof.hpp"
#include "gatc/theory.hpp"

namespace gatc {

enum class StmtKind { Ctx, IsType, HasType, TypeEq, TermEq };

struct Statement {
  StmtKind kind = StmtKind::Ctx;
  Expr lhs;
  Expr rhs;
  Expr type;

  static Statement ctx() { return {}; }
  static Statement is_type(Expr a) { return {StmtKind::IsType, std::move(a), {}, {}}; }
  static Statement has_type(Expr a, Expr t) { return {StmtKind::HasType, std::move(a), {}, std::move(t)}; }
  static Statement type_eq(Expr a, Expr b) { return {StmtKind::TypeEq, std::move(a), std::move(b), {}}; }
  static Statement term_eq(Expr a, Expr b, Expr t = {}) {
    return {StmtKind::TermEq, std::move(a), std::move(b), std::move(t)};
  }
};

struct Judgment {
  Context ctx;
  Statement stmt;
};

enum class Verdict { Ok, Inconclusive };

/// Algorithmic checker for the base rules, optionally with Pi-types.
/// Conversions that needed the equality engine are kept as a trace.
class Checker {
 public:
  Checker(const Pretheory& sig, std::size_t limit, RuleSet rules = {}, Fuel fuel = {})
      : sig_(sig), limit_(std::min(limit, sig.size())), rules_(rules), fuel_(fuel) {}
  explicit Checker(const Pretheory& sig, RuleSet rules = {}, Fuel fuel = {}) : Checker(sig, sig.size(), rules, fuel) {}

  const std::vector<Proof>& trace() const { return trace_; }
  RuleSet rules() const { return rules_; }
  Fuel fuel() const { return fuel_; }

  void check_context(const Context& ctx) {
    Context prefix;
    for (const auto& entry : ctx) {
      if (context_lookup(prefix, entry.var))
        throw Error(ErrorCode::ScopeError, "variable '" + entry.var + "' is bound twice");
      scope(prefix, entry.type);
      check_type(prefix, entry.type);
      prefix.push_back(entry);
    }
  }

  Expr infer_type(const Context& ctx, const Expr& a) {
    switch (a.kind()) {
      case ExprKind::Var: {
        const ContextEntry* e = context_lookup(ctx, a.name());
        if (!e) throw Error(ErrorCode::ScopeError, "unbound variable '" + a.name() + "'");
        return e->type;
      }
      case ExprKind::BVar: throw Error(ErrorCode::ScopeError, "dangling bound variable");
      case ExprKind::App: {
        const Declaration& d = symbol(a.name());
        if (d.kind != DeclKind::TermSymbol) throw Error(ErrorCode::NotATerm, "'" + a.name() + "' is a type symbol");
        Substitution sub = check_args(ctx, d, a.args());
        return substitute(d.type, sub);
      }
      case ExprKind::Pi: throw Error(ErrorCode::NotATerm, "a Pi-type is not a term");
      case ExprKind::Lam: {
        require_pi("lambda");
        check_type(ctx, a.arg(0));
        auto [inner, x] = extend(ctx, a.name(), a.arg(0));
        Expr body_type = infer_type(inner, open(a.arg(1), Expr::var(x)));
        return Expr::pi_raw(a.name(), a.arg(0), abstract(body_type, x));
      }
      case ExprKind::Ap: {
        require_pi("application");
        Expr f = infer_type(ctx, a.arg(0));
        if (f.kind() != ExprKind::Pi) throw Error(ErrorCode::NotAFunction, "applied term does not have a Pi-type");
        check_term(ctx, a.arg(1), f.arg(0));
        return open(f.arg(1), a.arg(1));
      }
    }
    throw Error(ErrorCode::NotATerm, "unexpected expression");
  }

  void check_type(const Context& ctx, const Expr& t) {
    switch (t.kind()) {
      case ExprKind::App: {
        const Declaration& d = symbol(t.name());
        if (d.kind != DeclKind::TypeSymbol) throw Error(ErrorCode::NotAType, "'" + t.name() + "' is not a type symbol");
        check_args(ctx, d, t.args());
        return;
      }
      case ExprKind::Pi: {
        require_pi("Pi");
        check_type(ctx, t.arg(0));
        auto [inner, x] = extend(ctx, t.name(), t.arg(0));
        check_type(inner, open(t.arg(1), Expr::var(x)));
        return;
      }
      default: throw Error(ErrorCode::NotAType, "expression is not a type");
    }
  }

  void check_term(const Context& ctx, const Expr& a, const Expr& type) {
    Expr inferred = infer_type(ctx, a);
    convert(inferred, type);
  }

  /// Whether the last equation left unsettled by `check` was saturated.
  bool saturated() const { return saturated_; }

  EqVerdict eq(const Expr& lhs, const Expr& rhs) {
    return eq_check(sig_, limit_, lhs, rhs, rules_, fuel_);
  }

  /// Ok when derivable; Inconclusive when an equality could not be settled.
  /// Ill-formed judgments throw.
  Verdict check(const Judgment& j) {
    check_context(j.ctx);
    const Statement& s = j.stmt;
    for (const Expr* e : {&s.lhs, &s.rhs, &s.type})
      if (*e) scope(j.ctx, *e);
    switch (s.kind) {
      case StmtKind::Ctx: return Verdict::Ok;
      case StmtKind::IsType: check_type(j.ctx, s.lhs); return Verdict::Ok;
      case StmtKind::HasType:
        check_type(j.ctx, s.type);
        check_term(j.ctx, s.lhs, s.type);
        return Verdict::Ok;
      case StmtKind::TypeEq:
        check_type(j.ctx, s.lhs);
        check_type(j.ctx, s.rhs);
        return settle(s.lhs, s.rhs);
      case StmtKind::TermEq: {
        Expr type = s.type;
        if (type) {
          check_type(j.ctx, type);
          check_term(j.ctx, s.lhs, type);
        } else {
          type = infer_type(j.ctx, s.lhs);
        }
        check_term(j.ctx, s.rhs, type);
        return settle(s.lhs, s.rhs);
      }
    }
    return Verdict::Ok;
  }

  /// Rejects free variables outside `ctx` and binder forms the rule set lacks.
  void scope(const Context& ctx, const Expr& e) const {
    for (const auto& v : free_vars(e))
      if (!context_lookup(ctx, v)) throw Error(ErrorCode::ScopeError, "variable '" + v + "' is not in scope");
    if (e.loose() > 0) throw Error(ErrorCode::ScopeError, "dangling bound variable");
    if (!rules_.pi && uses_binders(e)) throw Error(ErrorCode::RuleDisabled, "Pi-type rules are not enabled");
  }

 private:
  static bool uses_binders(const Expr& e) {
    if (e.kind() == ExprKind::Pi || e.kind() == ExprKind::Lam || e.kind() == ExprKind::Ap) return true;
    for (const auto& a : e.args())
      if (uses_binders(a)) return true;
    return false;
  }

  void require_pi(const char* what) const {
    if (!rules_.pi) throw Error(ErrorCode::RuleDisabled, std::string(what) + " needs the Pi-type rules");
  }

  const Declaration& symbol(const std::string& name) const {
    const Declaration* d = sig_.find(name, limit_);
    if (!d) {
      if (sig_.find(name)) throw Error(ErrorCode::ForwardReference, "'" + name + "' is declared later", name);
      throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + name + "'", name);
    }
    if (!d->is_symbol()) throw Error(ErrorCode::UnknownSymbol, "'" + name + "' is an axiom, not a symbol", name);
    return *d;
  }

  Substitution check_args(const Context& ctx, const Declaration& d, const std::vector<Expr>& args) {
    if (args.size() != d.ctx.size())
      throw Error(ErrorCode::ArityMismatch,
                  "'" + d.name + "' expects " + std::to_string(d.ctx.size()) + " arguments, got " +
                      std::to_string(args.size()),
                  d.name);
    Substitution sub;
    for (std::size_t i = 0; i < args.size(); ++i) {
      check_term(ctx, args[i], substitute(d.ctx[i].type, sub));
      sub.emplace(d.ctx[i].var, args[i]);
    }
    return sub;
  }

  std::pair<Context, std::string> extend(const Context& ctx, const std::string& hint, const Expr& type) const {
    std::string x = fresh_name(hint.empty() ? std::string("x") : hint,
                               [&ctx](const std::string& n) { return context_lookup(ctx, n) != nullptr; });
    Context inner = ctx;
    inner.push_back({x, type});
    return {std::move(inner), std::move(x)};
  }

  void convert(const Expr& have, const Expr& want) {
    if (have == want) return;
    EqVerdict v = eq(have, want);
    if (v.proved) {
      trace_.push_back(std::move(v.proof));
      return;
    }
    if (v.saturated) throw Error(ErrorCode::ArgumentTypeMismatch, "type mismatch: no derivation of the conversion");
    throw Error(ErrorCode::InconclusiveEquality, "conversion not provable within fuel");
  }

  Verdict settle(const Expr& lhs, const Expr& rhs) {
    if (lhs == rhs) return Verdict::Ok;
    EqVerdict v = eq(lhs, rhs);
    saturated_ = v.saturated;
    if (!v.proved) return Verdict::Inconclusive;
    trace_.push_back(std::move(v.proof));
    return Verdict::Ok;
  }

  const Pretheory& sig_;
  std::size_t limit_;
  RuleSet rules_;
  Fuel fuel_;
  std::vector<Proof> trace_;
  bool saturated_ = false;
};

}  // namespace gatc
