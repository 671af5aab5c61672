#pragma once

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gatc/deriv.hpp"
#include "gatc/error.hpp"
#include "gatc/expr.hpp"
#include "gatc/theory.hpp"

namespace gatc {

struct Position {
  std::size_t line = 1;
  std::size_t col = 1;

  std::string str() const { return std::to_string(line) + ":" + std::to_string(col); }
};

struct TheoryDef {
  std::string name;
  std::string base;
  Pretheory pre;
  Position pos;
  std::vector<Position> decl_pos;
};

struct InterpDef {
  std::string name;
  std::string src;
  std::string dst;
  SymbolMap map;
  std::vector<std::string> order;
  Position pos;
};

struct JudgmentDef {
  std::string name;
  std::string theory;
  Judgment judgment;
  Position pos;
};

struct SourceFile {
  std::vector<TheoryDef> theories;
  std::vector<InterpDef> interps;
  std::vector<JudgmentDef> judgments;

  const TheoryDef* theory(const std::string& name) const {
    for (const auto& t : theories)
      if (t.name == name) return &t;
    return nullptr;
  }
  const InterpDef* interp(const std::string& name) const {
    for (const auto& i : interps)
      if (i.name == name) return &i;
    return nullptr;
  }
};

/// Resolves theory names that a file mentions but does not define.
using TheoryLookup = std::function<std::optional<Pretheory>(const std::string&)>;

namespace syntax {

enum class Tok { Ident, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Position pos;
};

inline Error syntax_error(const Position& p, const std::string& msg) {
  return Error(ErrorCode::Syntax, p.str() + ": " + msg, p.str());
}

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '#';
}

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  Position pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++pos.line;
        pos.col = 1;
      } else {
        ++pos.col;
      }
    }
  };
  static const char* puncts[] = {"|->", "|-", "=>", "->", "(", ")", "{", "}", ",", ":", ";", "=", "@"};
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (src.compare(i, 2, "--") == 0) {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), pos});
      advance(j - i);
      continue;
    }
    bool matched = false;
    for (const char* p : puncts) {
      const std::string s(p);
      if (src.compare(i, s.size(), s) == 0) {
        out.push_back({Tok::Punct, s, pos});
        advance(s.size());
        matched = true;
        break;
      }
    }
    if (!matched) {
      std::string shown = std::isprint(static_cast<unsigned char>(c)) ? std::string(1, c) : "\\x" + [&] {
        static const char* hex = "0123456789abcdef";
        const auto u = static_cast<unsigned char>(c);
        return std::string{hex[u >> 4], hex[u & 15]};
      }();
      throw syntax_error(pos, "unexpected character '" + shown + "'");
    }
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

struct RawExpr {
  enum Kind { Ident, Call, Pi, Lam, Ap } kind = Ident;
  std::string name;
  std::vector<RawExpr> args;
  Position pos;
};

using RawTele = std::vector<std::pair<std::string, RawExpr>>;

struct RawDecl {
  bool axiom = false;
  std::string name;
  Position pos;
  RawTele tele;
  bool kind_is_type = false;
  std::optional<RawExpr> kind;
  std::optional<RawExpr> lhs;
  std::optional<RawExpr> rhs;
  std::optional<RawExpr> type;
  bool type_is_Type = false;
};

struct RawEntry {
  std::string symbol;
  std::optional<std::vector<std::string>> params;
  RawExpr body;
  Position pos;
};

struct RawJudgment {
  std::string name;
  std::string theory;
  RawTele tele;
  StmtKind kind = StmtKind::Ctx;
  std::optional<RawExpr> lhs, rhs, type;
  Position pos;
};

constexpr std::size_t kMaxDepth = 200;

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  void parse(std::vector<std::pair<TheoryDef, std::vector<RawDecl>>>& theories, std::vector<std::pair<InterpDef, std::vector<RawEntry>>>& interps,
             std::vector<RawJudgment>& judgments) {
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (is_word("theory")) {
        theories.push_back(theory());
      } else if (is_word("interp")) {
        interps.push_back(interp());
      } else if (is_word("judgment")) {
        judgments.push_back(judgment());
      } else {
        throw syntax_error(t.pos, "expected 'theory', 'interp' or 'judgment', found " + describe(t));
      }
    }
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
  }
  bool is_word(const char* w, std::size_t k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == w; }
  bool is_punct(const char* p, std::size_t k = 0) const { return peek(k).kind == Tok::Punct && peek(k).text == p; }

  void expect_punct(const char* p) {
    if (!is_punct(p)) throw syntax_error(peek().pos, std::string("expected '") + p + "', found " + describe(peek()));
    next();
  }
  void expect_word(const char* w) {
    if (!is_word(w)) throw syntax_error(peek().pos, std::string("expected '") + w + "', found " + describe(peek()));
    next();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) throw syntax_error(peek().pos, std::string("expected ") + what + ", found " + describe(peek()));
    return next().text;
  }

  std::pair<TheoryDef, std::vector<RawDecl>> theory() {
    TheoryDef def;
    def.pos = peek().pos;
    expect_word("theory");
    def.name = ident("theory name");
    if (is_word("extends")) {
      next();
      def.base = ident("base theory name");
    }
    expect_punct("{");
    std::vector<RawDecl> decls;
    while (!is_punct("}")) {
      if (is_word("sym")) {
        decls.push_back(symbol_decl());
      } else if (is_word("ax")) {
        decls.push_back(axiom_decl());
      } else {
        throw syntax_error(peek().pos, "expected 'sym', 'ax' or '}', found " + describe(peek()));
      }
    }
    next();
    return {std::move(def), std::move(decls)};
  }

  RawTele telescope() {
    const Position open = peek().pos;
    expect_punct("(");
    RawTele tele;
    if (!is_punct(")")) {
      if (peek().kind != Tok::Ident) throw syntax_error(open, "unmatched '(', found " + describe(peek()));
      for (;;) {
        std::string v = ident("variable name");
        expect_punct(":");
        tele.emplace_back(std::move(v), expr());
        if (!is_punct(",")) break;
        next();
      }
    }
    if (!is_punct(")")) throw syntax_error(open, "unmatched '(', found " + describe(peek()));
    next();
    return tele;
  }

  RawDecl symbol_decl() {
    RawDecl d;
    d.pos = peek().pos;
    expect_word("sym");
    d.name = ident("symbol name");
    expect_punct(":");
    d.tele = telescope();
    expect_punct("=>");
    if (is_word("Type") && !is_punct("(", 1)) {
      next();
      d.kind_is_type = true;
    } else {
      d.kind = expr();
    }
    return d;
  }

  RawDecl axiom_decl() {
    RawDecl d;
    d.axiom = true;
    d.pos = peek().pos;
    expect_word("ax");
    if (peek().kind == Tok::Ident) d.name = next().text;
    expect_punct(":");
    d.tele = telescope();
    expect_punct("=>");
    d.lhs = expr();
    expect_punct("=");
    d.rhs = expr();
    if (is_punct(":")) {
      next();
      if (is_word("Type") && !is_punct("(", 1)) {
        next();
        d.type_is_Type = true;
      } else {
        d.type = expr();
      }
    }
    return d;
  }

  std::pair<InterpDef, std::vector<RawEntry>> interp() {
    InterpDef def;
    def.pos = peek().pos;
    expect_word("interp");
    def.name = ident("interpretation name");
    expect_punct(":");
    def.src = ident("source theory");
    expect_punct("->");
    def.dst = ident("target theory");
    expect_punct("{");
    std::vector<RawEntry> entries;
    while (!is_punct("}")) {
      RawEntry e;
      e.pos = peek().pos;
      e.symbol = ident("symbol name");
      if (is_punct("(")) {
        next();
        std::vector<std::string> ps;
        if (!is_punct(")")) {
          for (;;) {
            ps.push_back(ident("parameter name"));
            if (!is_punct(",")) break;
            next();
          }
        }
        expect_punct(")");
        e.params = std::move(ps);
      }
      expect_punct("|->");
      e.body = expr();
      entries.push_back(std::move(e));
      if (is_punct(";")) {
        next();
      } else if (!is_punct("}")) {
        throw syntax_error(peek().pos, "expected ';' or '}', found " + describe(peek()));
      }
    }
    next();
    return {std::move(def), std::move(entries)};
  }

  RawJudgment judgment() {
    RawJudgment j;
    j.pos = peek().pos;
    expect_word("judgment");
    if (!is_word("in")) j.name = ident("judgment name");
    expect_word("in");
    j.theory = ident("theory name");
    expect_punct(":");
    j.tele = telescope();
    expect_punct("|-");
    if (is_word("ctx") && !is_punct("(", 1)) {
      next();
      j.kind = StmtKind::Ctx;
      return j;
    }
    RawExpr a = expr();
    if (is_punct(":")) {
      next();
      if (is_word("Type") && !is_punct("(", 1)) {
        next();
        j.kind = StmtKind::IsType;
      } else {
        j.kind = StmtKind::HasType;
        j.type = expr();
      }
      j.lhs = std::move(a);
      return j;
    }
    expect_punct("=");
    j.lhs = std::move(a);
    j.rhs = expr();
    j.kind = StmtKind::TermEq;
    if (is_punct(":")) {
      next();
      if (is_word("Type") && !is_punct("(", 1)) {
        next();
        j.kind = StmtKind::TypeEq;
      } else {
        j.type = expr();
      }
    }
    return j;
  }

  RawExpr expr() {
    Guard g(*this);
    RawExpr lhs = atom();
    while (is_punct("@")) {
      RawExpr node;
      node.kind = RawExpr::Ap;
      node.pos = next().pos;
      node.args.push_back(std::move(lhs));
      node.args.push_back(atom());
      lhs = std::move(node);
    }
    return lhs;
  }

  RawExpr atom() {
    Guard g(*this);
    const Token& t = peek();
    if (is_punct("(")) {
      next();
      RawExpr e = expr();
      expect_punct(")");
      return e;
    }
    if (t.kind != Tok::Ident) throw syntax_error(t.pos, "expected an expression, found " + describe(t));
    RawExpr e;
    e.pos = t.pos;
    if ((t.text == "Pi" || t.text == "lam") && is_punct("(", 1)) {
      e.kind = t.text == "Pi" ? RawExpr::Pi : RawExpr::Lam;
      next();
      next();
      e.name = ident("bound variable");
      expect_punct(":");
      e.args.push_back(expr());
      expect_punct(")");
      e.args.push_back(expr());
      return e;
    }
    e.name = next().text;
    if (is_punct("(")) {
      next();
      e.kind = RawExpr::Call;
      if (!is_punct(")")) {
        for (;;) {
          e.args.push_back(expr());
          if (!is_punct(",")) break;
          next();
        }
      }
      expect_punct(")");
    }
    return e;
  }

  struct Guard {
    explicit Guard(Parser& p) : p_(p) {
      if (++p_.depth_ > kMaxDepth) throw syntax_error(p_.peek().pos, "expression nested too deeply");
    }
    ~Guard() { --p_.depth_; }
    Parser& p_;
  };

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

// Identifiers bound in scope become variables; any other bare identifier is
// a nullary symbol application.
inline Expr resolve(const RawExpr& r, std::vector<std::string>& bound, const std::set<std::string>& vars) {
  auto is_bound = [&](const std::string& n) {
    for (const auto& b : bound)
      if (b == n) return true;
    return vars.count(n) != 0;
  };
  switch (r.kind) {
    case RawExpr::Ident:
      if (is_bound(r.name)) return Expr::var(r.name);
      return Expr::app(r.name);
    case RawExpr::Call: {
      std::vector<Expr> args;
      for (const auto& a : r.args) args.push_back(resolve(a, bound, vars));
      return Expr::app(r.name, std::move(args));
    }
    case RawExpr::Pi:
    case RawExpr::Lam: {
      Expr dom = resolve(r.args[0], bound, vars);
      bound.push_back(r.name);
      Expr body = resolve(r.args[1], bound, vars);
      bound.pop_back();
      return r.kind == RawExpr::Pi ? Expr::pi(r.name, std::move(dom), body) : Expr::lam(r.name, std::move(dom), body);
    }
    case RawExpr::Ap: {
      Expr f = resolve(r.args[0], bound, vars);
      return Expr::ap(std::move(f), resolve(r.args[1], bound, vars));
    }
  }
  return {};
}

inline Context resolve_tele(const RawTele& tele, std::vector<std::string>& bound) {
  std::set<std::string> all;
  for (const auto& [v, t] : tele) all.insert(v);
  Context ctx;
  for (const auto& [v, t] : tele) {
    ctx.push_back({v, resolve(t, bound, all)});
    bound.push_back(v);
  }
  return ctx;
}

inline Declaration elaborate_decl(const RawDecl& d, std::size_t position) {
  std::vector<std::string> bound;
  Context ctx = resolve_tele(d.tele, bound);
  auto res = [&](const RawExpr& e) { return resolve(e, bound, {}); };
  if (!d.axiom) {
    if (d.kind_is_type) return Declaration::type_symbol(d.name, std::move(ctx));
    return Declaration::term_symbol(d.name, std::move(ctx), res(*d.kind));
  }
  const bool anon = d.name.empty() || d.name == "_";
  std::string label = anon ? "_" + std::to_string(position) : d.name;
  Declaration out = d.type_is_Type ? Declaration::type_eq(label, std::move(ctx), res(*d.lhs), res(*d.rhs))
                                   : Declaration::term_eq(label, std::move(ctx), res(*d.lhs), res(*d.rhs),
                                                          d.type ? res(*d.type) : Expr{});
  out.anonymous = anon;
  return out;
}

}  // namespace syntax

/// Parses and elaborates a `.gat` source.  Theories named by `extends` or by
/// interpretations are looked up in the file first and then via `lookup`.
inline SourceFile parse(const std::string& text, const TheoryLookup& lookup = {}) {
  using namespace syntax;
  std::vector<std::pair<TheoryDef, std::vector<RawDecl>>> raw_theories;
  std::vector<std::pair<InterpDef, std::vector<RawEntry>>> raw_interps;
  std::vector<RawJudgment> raw_judgments;
  Parser(text).parse(raw_theories, raw_interps, raw_judgments);

  SourceFile file;
  std::set<std::string> names;
  auto claim = [&names](const std::string& n, const Position& p) {
    if (!names.insert(n).second) throw Error(ErrorCode::DuplicateName, p.str() + ": '" + n + "' is defined twice", p.str());
  };
  auto find_theory = [&](const std::string& n, const Position& p) -> Pretheory {
    if (const TheoryDef* t = file.theory(n)) return t->pre;
    if (lookup)
      if (auto found = lookup(n)) return *found;
    throw Error(ErrorCode::UnknownSymbol, p.str() + ": unknown theory '" + n + "'", p.str());
  };

  for (auto& [def, decls] : raw_theories) {
    claim(def.name, def.pos);
    if (!def.base.empty()) {
      def.pre = find_theory(def.base, def.pos);
      def.decl_pos.assign(def.pre.size(), def.pos);
    }
    for (const auto& d : decls) {
      def.pre.push_back(elaborate_decl(d, def.pre.size()));
      def.decl_pos.push_back(d.pos);
    }
    file.theories.push_back(std::move(def));
  }

  for (auto& [def, entries] : raw_interps) {
    claim(def.name, def.pos);
    Pretheory src = find_theory(def.src, def.pos);
    find_theory(def.dst, def.pos);
    for (const auto& e : entries) {
      const Declaration* d = src.find(e.symbol);
      if (!d || !d->is_symbol())
        throw Error(ErrorCode::UnknownSymbol, e.pos.str() + ": '" + e.symbol + "' is not a symbol of " + def.src, e.pos.str());
      if (def.map.count(e.symbol))
        throw Error(ErrorCode::DuplicateName, e.pos.str() + ": '" + e.symbol + "' is mapped twice", e.pos.str());
      std::vector<std::string> params = e.params ? *e.params : d->params();
      if (params.size() != d->ctx.size())
        throw Error(ErrorCode::ArityMismatch,
                    e.pos.str() + ": '" + e.symbol + "' takes " + std::to_string(d->ctx.size()) + " parameters",
                    e.pos.str());
      std::vector<std::string> bound;
      std::set<std::string> vars(params.begin(), params.end());
      def.map.emplace(e.symbol, SymbolImage{params, resolve(e.body, bound, vars)});
      def.order.push_back(e.symbol);
    }
    file.interps.push_back(std::move(def));
  }

  for (const auto& j : raw_judgments) {
    JudgmentDef def;
    def.name = j.name;
    def.theory = j.theory;
    def.pos = j.pos;
    find_theory(j.theory, j.pos);
    std::vector<std::string> bound;
    def.judgment.ctx = resolve_tele(j.tele, bound);
    auto res = [&](const std::optional<RawExpr>& e) { return e ? resolve(*e, bound, {}) : Expr{}; };
    def.judgment.stmt = Statement{j.kind, res(j.lhs), res(j.rhs), res(j.type)};
    file.judgments.push_back(std::move(def));
  }
  return file;
}

struct PrintOptions {
  bool unicode = false;
  // Normalizes variable names and hides axiom labels.
  bool canonical = false;
};

namespace syntax {

class Printer {
 public:
  explicit Printer(PrintOptions opts) : opts_(opts) {}

  std::string expr(const Expr& e, const std::vector<std::string>& scope) {
    std::vector<std::string> binders;
    std::string out;
    write(out, e, scope, binders);
    return out;
  }

  std::string telescope(const Context& ctx) {
    // The parser treats every telescope name as a variable across the whole
    // telescope, so symbols sharing a later name still need parentheses.
    std::string out = "(";
    std::vector<std::string> scope;
    for (const auto& entry : ctx) scope.push_back(entry.var);
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (i) out += ", ";
      out += ctx[i].var + " : " + expr(ctx[i].type, scope);
    }
    return out + ")";
  }

  std::string decl(const Declaration& d0) {
    const Declaration d = opts_.canonical ? canonical_vars(d0) : d0;
    const std::vector<std::string> scope = d.params();
    const std::string arrow = opts_.unicode ? " ⇒ " : " => ";
    std::string out = d.is_symbol() ? "sym " + d.name : "ax " + ((d.anonymous || opts_.canonical) ? std::string("_") : d.name);
    out += " : " + telescope(d.ctx) + arrow;
    switch (d.kind) {
      case DeclKind::TypeSymbol: out += "Type"; break;
      case DeclKind::TermSymbol: out += expr(d.type, scope); break;
      case DeclKind::TypeEq: out += expr(d.lhs, scope) + " = " + expr(d.rhs, scope) + " : Type"; break;
      case DeclKind::TermEq:
        out += expr(d.lhs, scope) + " = " + expr(d.rhs, scope);
        if (d.type) out += " : " + expr(d.type, scope);
        break;
    }
    return out;
  }

  std::string theory(const std::string& name, const Pretheory& pre) {
    std::string out = "theory " + (opts_.canonical ? std::string("_") : name) + " {\n";
    for (const auto& d : pre.decls()) out += "  " + decl(d) + "\n";
    return out + "}\n";
  }

  std::string interp(const std::string& name, const std::string& src, const std::string& dst, const SymbolMap& map,
                     const std::vector<std::string>& order) {
    const std::string to = opts_.unicode ? " ↦ " : " |-> ";
    std::string out = "interp " + name + " : " + src + " -> " + dst + " {\n";
    for (const auto& sym : order) {
      const SymbolImage& img = map.at(sym);
      out += "  " + sym;
      if (!img.params.empty()) {
        out += "(";
        for (std::size_t i = 0; i < img.params.size(); ++i) out += (i ? ", " : "") + img.params[i];
        out += ")";
      }
      out += to + expr(img.body, img.params) + ";\n";
    }
    return out + "}\n";
  }

 private:
  static Declaration canonical_vars(const Declaration& d) {
    Substitution sub;
    Declaration out = d;
    for (std::size_t i = 0; i < d.ctx.size(); ++i) {
      std::string v = "v" + std::to_string(i);
      out.ctx[i].var = v;
      out.ctx[i].type = substitute(d.ctx[i].type, sub);
      sub[d.ctx[i].var] = Expr::var(v);
    }
    for (Expr* e : {&out.type, &out.lhs, &out.rhs})
      if (*e) *e = substitute(*e, sub);
    return out;
  }

  static bool in(const std::vector<std::string>& v, const std::string& n) {
    for (const auto& x : v)
      if (x == n) return true;
    return false;
  }

  void write(std::string& out, const Expr& e, const std::vector<std::string>& scope, std::vector<std::string>& binders) {
    switch (e.kind()) {
      case ExprKind::Var: out += e.name(); return;
      case ExprKind::BVar:
        out += e.index() < binders.size() ? binders[binders.size() - 1 - e.index()] : "#" + std::to_string(e.index());
        return;
      case ExprKind::App:
        out += e.name();
        if (!e.args().empty()) {
          out += "(";
          for (std::size_t i = 0; i < e.args().size(); ++i) {
            if (i) out += ", ";
            write(out, e.arg(i), scope, binders);
          }
          out += ")";
        } else if (in(scope, e.name()) || in(binders, e.name())) {
          out += "()";
        }
        return;
      case ExprKind::Pi:
      case ExprKind::Lam: {
        std::string head = e.kind() == ExprKind::Pi ? (opts_.unicode ? "Π" : "Pi") : (opts_.unicode ? "λ" : "lam");
        std::string hint = opts_.canonical || e.name().empty() ? "b" : e.name();
        const auto body_free = free_vars(e.arg(1));
        std::string x = fresh_name(hint, [&](const std::string& n) {
          return in(scope, n) || in(binders, n) || in(body_free, n) || n == "Pi" || n == "lam";
        });
        out += head + "(" + x + " : ";
        write(out, e.arg(0), scope, binders);
        out += ") ";
        binders.push_back(x);
        write(out, e.arg(1), scope, binders);
        binders.pop_back();
        return;
      }
      case ExprKind::Ap: {
        const Expr& f = e.arg(0);
        const Expr& a = e.arg(1);
        const bool pf = f.is_binder();
        const bool pa = a.is_binder() || a.kind() == ExprKind::Ap;
        if (pf) out += "(";
        write(out, f, scope, binders);
        if (pf) out += ")";
        out += " @ ";
        if (pa) out += "(";
        write(out, a, scope, binders);
        if (pa) out += ")";
        return;
      }
    }
  }

  PrintOptions opts_;
};

}  // namespace syntax

inline std::string print_expr(const Expr& e, const std::vector<std::string>& scope = {}, PrintOptions opts = {}) {
  return syntax::Printer(opts).expr(e, scope);
}

inline std::string print_decl(const Declaration& d, PrintOptions opts = {}) { return syntax::Printer(opts).decl(d); }

inline std::string print_theory(const std::string& name, const Pretheory& pre, PrintOptions opts = {}) {
  return syntax::Printer(opts).theory(name, pre);
}

inline std::string print_theory(const Theory& t, PrintOptions opts = {}) { return print_theory(t.name(), t.pre(), opts); }

/// Labels anonymized and context variables renamed v0, v1, ... so that
/// theories equal up to those choices print identically.
inline std::string canonical_print(const Pretheory& pre) {
  PrintOptions o;
  o.canonical = true;
  return print_theory("_", pre, o);
}

inline std::string canonical_print(const Theory& t) { return canonical_print(t.pre()); }

inline std::string print_interp(const InterpDef& i, PrintOptions opts = {}) {
  return syntax::Printer(opts).interp(i.name, i.src, i.dst, i.map, i.order);
}

inline std::string print_judgment(const JudgmentDef& j, PrintOptions opts = {}) {
  syntax::Printer p(opts);
  std::string out = "judgment " + (j.name.empty() ? std::string() : j.name + " ") + "in " + j.theory + " : " +
                    p.telescope(j.judgment.ctx) + (opts.unicode ? " ⊢ " : " |- ");
  const auto scope = context_vars(j.judgment.ctx);
  const Statement& s = j.judgment.stmt;
  switch (s.kind) {
    case StmtKind::Ctx: out += "ctx"; break;
    case StmtKind::IsType: out += p.expr(s.lhs, scope) + " : Type"; break;
    case StmtKind::HasType: out += p.expr(s.lhs, scope) + " : " + p.expr(s.type, scope); break;
    case StmtKind::TypeEq: out += p.expr(s.lhs, scope) + " = " + p.expr(s.rhs, scope) + " : Type"; break;
    case StmtKind::TermEq:
      out += p.expr(s.lhs, scope) + " = " + p.expr(s.rhs, scope);
      if (s.type) out += " : " + p.expr(s.type, scope);
      break;
  }
  return out + "\n";
}

inline std::string print_source(const SourceFile& f, PrintOptions opts = {}) {
  std::string out;
  for (const auto& t : f.theories) {
    if (!out.empty()) out += "\n";
    out += print_theory(t.name, t.pre, opts);
  }
  for (const auto& i : f.interps) out += "\n" + print_interp(i, opts);
  if (!f.judgments.empty()) out += "\n";
  for (const auto& j : f.judgments) out += print_judgment(j, opts);
  return out;
}

}  // namespace gatc
