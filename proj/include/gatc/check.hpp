#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "gatc/deriv.hpp"
#include "gatc/error.hpp"
#include "gatc/theory.hpp"

namespace gatc {

class TheoryBuilder {
 public:
  static Theory make(std::string name, Pretheory pre, std::vector<std::size_t> certificate, bool pi) {
    Theory t;
    t.name_ = std::move(name);
    t.pre_ = std::move(pre);
    t.certificate_ = std::move(certificate);
    t.pi_rules_ = pi;
    return t;
  }
};

namespace detail {

inline bool is_type_expr(const Pretheory& pre, std::size_t limit, const Expr& e) {
  if (e.kind() == ExprKind::Pi) return true;
  if (e.kind() != ExprKind::App) return false;
  const Declaration* d = pre.find(e.name(), limit);
  return d && d->kind == DeclKind::TypeSymbol;
}

// Checks declaration `i` of `pre` against the declarations before it and
// returns the elaborated declaration.  Conversions needed go to `proofs`.
inline Declaration check_declaration(const Pretheory& pre, std::size_t i, RuleSet rules, Fuel fuel,
                                     std::size_t& proofs) {
  Declaration d = pre[i];
  Checker ck(pre, i, rules, fuel);
  ck.check_context(d.ctx);
  for (const auto& e : d.exprs()) ck.scope(d.ctx, e);
  switch (d.kind) {
    case DeclKind::TypeSymbol: break;
    case DeclKind::TermSymbol: ck.check_type(d.ctx, d.type); break;
    case DeclKind::TypeEq:
      ck.check_type(d.ctx, d.lhs);
      ck.check_type(d.ctx, d.rhs);
      break;
    case DeclKind::TermEq:
      if (!d.type && is_type_expr(pre, i, d.lhs)) {
        d.kind = DeclKind::TypeEq;
        ck.check_type(d.ctx, d.lhs);
        ck.check_type(d.ctx, d.rhs);
        break;
      }
      if (d.type) {
        ck.check_type(d.ctx, d.type);
        ck.check_term(d.ctx, d.lhs, d.type);
      } else {
        d.type = ck.infer_type(d.ctx, d.lhs);
      }
      ck.check_term(d.ctx, d.rhs, d.type);
      break;
  }
  proofs = ck.trace().size();
  return d;
}

}  // namespace detail

/// Certifies every declaration over the prefix before it.  Errors name the
/// offending declaration in `where()`.
inline Theory check_theory(const Pretheory& pt, std::string name = {}, RuleSet rules = {}, Fuel fuel = {}) {
  Pretheory out;
  std::vector<std::size_t> cert;
  for (std::size_t i = 0; i < pt.size(); ++i) {
    const Declaration& d = pt[i];
    if (d.name.empty()) throw Error(ErrorCode::Syntax, "declaration without a name");
    if (out.contains(d.name)) throw Error(ErrorCode::DuplicateName, "'" + d.name + "' is declared twice", d.name);
    // Names resolve against the full list so that later symbols are reported
    // as forward references rather than unknown ones.
    Pretheory view = out;
    for (std::size_t j = i; j < pt.size(); ++j) view.push_back(pt[j]);
    std::size_t proofs = 0;
    try {
      out.push_back(detail::check_declaration(view, i, rules, fuel, proofs));
    } catch (const Error& e) {
      throw Error(e.code(), "in '" + d.name + "': " + e.what(), d.name);
    }
    cert.push_back(proofs);
  }
  return TheoryBuilder::make(std::move(name), std::move(out), std::move(cert), rules.pi);
}

/// Checks only `d` over `t` and appends it.
inline Theory extend(const Theory& t, Declaration d, RuleSet rules = {}, Fuel fuel = {}) {
  if (t.pre().contains(d.name)) throw Error(ErrorCode::DuplicateName, "'" + d.name + "' is declared twice", d.name);
  Pretheory view = t.pre();
  view.push_back(std::move(d));
  std::size_t proofs = 0;
  Declaration checked;
  try {
    checked = detail::check_declaration(view, t.size(), rules, fuel, proofs);
  } catch (const Error& e) {
    throw Error(e.code(), "in '" + view[t.size()].name + "': " + e.what(), view[t.size()].name);
  }
  Pretheory out = t.pre();
  out.push_back(std::move(checked));
  std::vector<std::size_t> cert = t.certificate();
  cert.push_back(proofs);
  return TheoryBuilder::make(t.name(), std::move(out), std::move(cert), rules.pi || t.pi_rules());
}

inline Verdict check_judgment(const Theory& t, const Judgment& j, RuleSet rules = {}, Fuel fuel = {}) {
  Checker ck(t.pre(), rules, fuel);
  return ck.check(j);
}

inline Theory terminal_theory() { return check_theory(Pretheory{}, "terminal"); }

namespace detail {

inline std::string idx(const char* base, std::size_t i) { return base + std::to_string(i); }

// x0 : A0, x1 : A1(x0), ..., x_{n-1} : A_{n-1}(x0, ..., x_{n-2})
inline Context ty_telescope(std::size_t n) {
  Context ctx;
  std::vector<Expr> vars;
  for (std::size_t i = 0; i < n; ++i) {
    ctx.push_back({idx("x", i), Expr::app(idx("A", i), vars)});
    vars.push_back(Expr::var(idx("x", i)));
  }
  return ctx;
}

inline Pretheory ty_decls(std::size_t n) {
  Pretheory pre;
  for (std::size_t i = 0; i <= n; ++i) pre.push_back(Declaration::type_symbol(idx("A", i), ty_telescope(i)));
  return pre;
}

}  // namespace detail

/// A0, ..., An where Ai depends on one variable of each earlier Aj.
inline Theory mk_Ty(std::size_t n) { return check_theory(detail::ty_decls(n), "Ty" + std::to_string(n)); }

/// Ty_n plus e_n : (x0, ..., x_{n-1}) => A_n(x0, ..., x_{n-1}).
inline Theory mk_El(std::size_t n) {
  Pretheory pre = detail::ty_decls(n);
  Context ctx = detail::ty_telescope(n);
  std::vector<Expr> vars;
  for (const auto& e : ctx) vars.push_back(Expr::var(e.var));
  pre.push_back(Declaration::term_symbol(detail::idx("e", n), ctx, Expr::app(detail::idx("A", n), vars)));
  return check_theory(pre, "El" + std::to_string(n));
}

}  // namespace gatc
