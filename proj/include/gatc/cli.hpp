#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gatc/check.hpp"
#include "gatc/egraph.hpp"
#include "gatc/error.hpp"
#include "gatc/gatcat.hpp"
#include "gatc/models.hpp"
#include "gatc/poly.hpp"
#include "gatc/proof.hpp"
#include "gatc/stdlib.hpp"
#include "gatc/syntax.hpp"

namespace gatc::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "gatc-report/1";

enum Exit : int { kOk = 0, kFailed = 1, kInconclusive = 2, kUsage = 3 };

struct Options {
  Fuel fuel;
  RuleSet rules;
  bool json = false;
  bool trace = false;
  bool unicode = false;

  PrintOptions print() const { return PrintOptions{unicode, false}; }
};

struct Item {
  std::string kind;
  std::string name;
  std::string status;  // ok, Proved, Failed, Inconclusive or error
  std::string message;
  json data = json::object();
  std::vector<Proof> proofs;
};

struct Report {
  std::string command;
  std::vector<Item> items;
  std::string output;
  bool usage_error = false;
  bool bare = false;  // text mode prints only the output when everything is ok

  int exit_code() const {
    if (usage_error) return kUsage;
    bool inconclusive = false;
    for (const auto& i : items) {
      if (i.status == "Failed" || i.status == "error") return kFailed;
      if (i.status == "Inconclusive") inconclusive = true;
    }
    return inconclusive ? kInconclusive : kOk;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Rendering

inline std::string show(const Expr& e, const PrintOptions& opts = {}) {
  if (!e) return "";
  return print_expr(e, free_vars(e), opts);
}

inline json proof_json(const Proof& p) {
  json j;
  j["rule"] = rule_name(p.rule);
  j["lhs"] = show(p.lhs);
  j["rhs"] = show(p.rhs);
  if (!p.axiom.empty()) j["axiom"] = p.axiom;
  if (!p.subst.empty()) {
    json s = json::object();
    for (const auto& [x, e] : p.subst) s[x] = show(e);
    j["subst"] = std::move(s);
  }
  if (!p.premises.empty()) {
    json ps = json::array();
    for (const auto& q : p.premises) ps.push_back(proof_json(q));
    j["premises"] = std::move(ps);
  }
  return j;
}

inline void proof_text(std::ostream& os, const Proof& p, int depth) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << rule_name(p.rule);
  if (!p.axiom.empty()) os << " " << p.axiom;
  os << ": " << show(p.lhs) << " = " << show(p.rhs) << "\n";
  for (const auto& q : p.premises) proof_text(os, q, depth + 1);
}

inline std::string data_text(const json& data) {
  std::string out;
  for (const auto& [k, v] : data.items()) {
    if (v.is_structured()) continue;
    out += out.empty() ? "" : ", ";
    out += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return out;
}

inline std::string render_text(const Report& r, const Options& opt) {
  std::ostringstream os;
  os << r.output;
  if (r.bare && r.exit_code() == kOk) return os.str();
  for (const auto& i : r.items) {
    os << i.kind << " " << i.name << ": " << i.status;
    if (!i.message.empty()) os << " (" << i.message << ")";
    const std::string extra = data_text(i.data);
    if (!extra.empty()) os << " [" << extra << "]";
    os << "\n";
    if (opt.trace)
      for (const auto& p : i.proofs) proof_text(os, p, 1);
  }
  return os.str();
}

inline std::string render_json(const Report& r, const Options& opt) {
  json j;
  j["schema"] = kSchema;
  j["command"] = r.command;
  j["rules"] = opt.rules.pi ? "pi" : "base";
  j["fuel"] = {{"nodes", opt.fuel.max_eq_nodes}, {"iterations", opt.fuel.max_iterations}};
  json items = json::array();
  for (const auto& i : r.items) {
    json it;
    it["kind"] = i.kind;
    it["name"] = i.name;
    it["status"] = i.status;
    if (!i.message.empty()) it["message"] = i.message;
    if (!i.data.empty()) it["data"] = i.data;
    if (opt.trace && !i.proofs.empty()) {
      json ps = json::array();
      for (const auto& p : i.proofs) ps.push_back(proof_json(p));
      it["trace"] = std::move(ps);
    }
    items.push_back(std::move(it));
  }
  j["items"] = std::move(items);
  if (!r.output.empty()) j["output"] = r.output;
  j["exit"] = r.exit_code();
  return j.dump(2) + "\n";
}

inline Item error_item(std::string kind, std::string name, const std::exception& e) {
  Item i{std::move(kind), std::move(name), "error", {}, json::object(), {}};
  if (const auto* g = dynamic_cast<const Error*>(&e)) {
    i.message = std::string(code_name(g->code())) + ": " + g->what();
    i.data["code"] = std::string(code_name(g->code()));
  } else {
    i.message = e.what();
  }
  return i;
}

inline Item report_item(std::string kind, std::string name, const CheckReport& rep) {
  Item i{std::move(kind), std::move(name), rep.ok() ? "Proved" : rep.saturated_failure() ? "Failed" : "Inconclusive",
         {}, json::object(), {}};
  i.data["obligations"] = rep.items.size();
  i.data["axiom_instances"] = rep.axiom_instances();
  for (const auto& o : rep.items) {
    for (const auto& p : o.trace) i.proofs.push_back(p);
    if (o.verdict != Verdict::Ok && i.message.empty()) i.message = o.decl + (o.note.empty() ? "" : ": " + o.note);
  }
  return i;
}

inline Item axiom_item(std::string kind, const AxiomCheck& c) {
  Item i{std::move(kind), c.axiom + "[" + c.sample + "]", status_name(c.status), c.note, json::object(), {}};
  i.data["sample"] = c.sample;
  i.data["axiom_instances"] = c.axiom_instances;
  json rules = json::array();
  for (Rule r : c.rules_used) rules.push_back(rule_name(r));
  i.data["rules"] = std::move(rules);
  for (const auto& o : c.detail.items)
    for (const auto& p : o.trace) i.proofs.push_back(p);
  return i;
}

inline InterpDef as_def(const Interpretation& i) {
  InterpDef d;
  d.name = i.name;
  d.src = i.src->name();
  d.dst = i.dst->name();
  d.map = i.map;
  for (const auto& c : i.src->decls())
    if (c.is_symbol() && i.map.count(c.name)) d.order.push_back(c.name);
  return d;
}

inline std::string cell_key(const std::vector<int>& args) {
  std::string s = "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + std::to_string(args[i]);
  return s + ")";
}

inline json model_json(const Model& m) {
  json j = json::object();
  for (const auto& [sym, table] : m.tables) {
    json t = json::object();
    for (const auto& [args, v] : table) t[cell_key(args)] = v;
    j[sym] = std::move(t);
  }
  return j;
}

// ---------------------------------------------------------------------------
// Loading

/// A parsed source file together with its checked theories.
class Workspace {
 public:
  Workspace(Options opt, const std::string& path) : opt_(opt), path_(path) {
    if (path.empty()) return;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      file_ = parse(ss.str(), stdlib_lookup);
    } catch (const Error& e) {
      throw UsageError(path + ":" + e.what());
    }
  }

  const SourceFile& file() const { return file_; }

  TheoryPtr theory(const std::string& name) {
    if (auto it = cache_.find(name); it != cache_.end()) return it->second;
    TheoryPtr t;
    if (const TheoryDef* def = file_.theory(name)) {
      try {
        t = share(check_theory(def->pre, name, opt_.rules, opt_.fuel));
      } catch (const Error& e) {
        std::string where = path_;
        if (auto p = def->pre.position(e.where()); p && *p < def->decl_pos.size())
          where += ":" + def->decl_pos[*p].str();
        throw Error(e.code(), where + ": " + e.what(), where);
      }
    } else if (const Theory* s = stdlib_find(name)) {
      t = share(*s);
    } else if (name == "terminal") {
      t = detail::ty_theory(-1);
    } else {
      throw Error(ErrorCode::UnknownSymbol, "unknown theory '" + name + "'", name);
    }
    cache_.emplace(name, t);
    return t;
  }

  Interpretation interp(const std::string& name) {
    const InterpDef* def = file_.interp(name);
    if (!def) throw Error(ErrorCode::UnknownSymbol, "unknown interpretation '" + name + "'", name);
    return Interpretation{def->name, theory(def->src), theory(def->dst), def->map};
  }

  std::optional<Pretheory> lookup(const std::string& name) const {
    if (const TheoryDef* def = file_.theory(name)) return def->pre;
    return stdlib_lookup(name);
  }

 private:
  Options opt_;
  std::string path_;
  SourceFile file_;
  std::map<std::string, TheoryPtr> cache_;
};

// ---------------------------------------------------------------------------
// Commands

inline void cmd_check(Report& r, Workspace& ws, const Options& opt, const std::vector<std::string>& equiv) {
  for (const auto& def : ws.file().theories) {
    try {
      TheoryPtr t = ws.theory(def.name);
      Item i{"theory", def.name, "ok", {}, json::object(), {}};
      i.data["declarations"] = t->size();
      i.data["symbols"] = t->pre().symbol_count();
      i.data["axioms"] = t->pre().axiom_count();
      r.items.push_back(std::move(i));
    } catch (const std::exception& e) {
      r.items.push_back(error_item("theory", def.name, e));
    }
  }
  for (const auto& def : ws.file().interps) {
    try {
      r.items.push_back(report_item("interp", def.name, check_interpretation(ws.interp(def.name), opt.rules, opt.fuel)));
    } catch (const std::exception& e) {
      r.items.push_back(error_item("interp", def.name, e));
    }
  }
  for (const auto& j : ws.file().judgments) {
    const std::string name = j.name.empty() ? "@" + j.pos.str() : j.name;
    try {
      Checker ck(ws.theory(j.theory)->pre(), opt.rules, opt.fuel);
      const Verdict v = ck.check(j.judgment);
      Item i{"judgment", name, v == Verdict::Ok ? "ok" : "Inconclusive", {}, json::object(), ck.trace()};
      r.items.push_back(std::move(i));
    } catch (const Error& e) {
      r.items.push_back(e.inconclusive() ? Item{"judgment", name, "Inconclusive", e.what(), json::object(), {}}
                                         : error_item("judgment", name, e));
    }
  }
  if (equiv.size() == 2) {
    const std::string name = equiv[0] + " ~ " + equiv[1];
    try {
      r.items.push_back(report_item("equivalence", name, equivalent(ws.interp(equiv[0]), ws.interp(equiv[1]), opt.rules, opt.fuel)));
    } catch (const std::exception& e) {
      r.items.push_back(error_item("equivalence", name, e));
    }
  }
}

struct EqArgs {
  std::string theory, ctx, lhs, rhs;
};

inline void cmd_eq(Report& r, Workspace& ws, const Options& opt, const EqArgs& a) {
  const std::string text = "judgment in " + a.theory + " : (" + a.ctx + ") |- " + a.lhs + " = " + a.rhs;
  SourceFile q;
  try {
    q = parse(text, [&ws](const std::string& n) { return ws.lookup(n); });
  } catch (const Error& e) {
    throw UsageError(std::string("in query: ") + e.what());
  }
  const Judgment& j = q.judgments.front().judgment;
  TheoryPtr t = ws.theory(a.theory);
  Checker ck(t->pre(), opt.rules, opt.fuel);
  ck.check_context(j.ctx);
  for (const auto& e : {j.stmt.lhs, j.stmt.rhs}) ck.scope(j.ctx, e);
  EqVerdict v = eq_check(t->pre(), j.stmt.lhs, j.stmt.rhs, opt.rules, opt.fuel);
  Item i{"equation", a.lhs + " = " + a.rhs, v.proved ? "Proved" : "Inconclusive", {}, json::object(), {}};
  i.data["saturated"] = v.saturated;
  i.data["nodes"] = v.nodes;
  i.data["rounds"] = v.rounds;
  if (v.proved) {
    i.data["axiom_instances"] = v.proof.axiom_instances();
    i.proofs.push_back(std::move(v.proof));
  } else {
    i.message = v.saturated ? "not equal after saturation" : "fuel exhausted";
  }
  r.items.push_back(std::move(i));
}

inline Interpretation valid_interp(Workspace& ws, const std::string& name, const Options& opt) {
  Interpretation i = ws.interp(name);
  CheckReport rep = check_interpretation(i, opt.rules, opt.fuel);
  if (!rep.ok()) throw Error(ErrorCode::InvalidInterpretation, "interpretation '" + name + "' does not check", name);
  return i;
}

inline void cmd_pushout(Report& r, Workspace& ws, const Options& opt, const std::string& base, const std::string& total,
                        const std::string& along, const std::string& name) {
  Interpretation i = valid_interp(ws, along, opt);
  TheoryPtr b = ws.theory(base);
  if (i.src->name() != b->name()) throw Error(ErrorCode::InvalidInterpretation, "'" + along + "' does not start at " + base);
  Pushout p = pushout(b, ws.theory(total), i, opt.rules, opt.fuel, name);
  r.output = print_theory(*p.apex, opt.print());
  Item it{"pushout", p.apex->name(), "ok", {}, json::object(), {}};
  for (const auto& [old, fresh] : p.names) it.data["names"][old] = fresh;
  r.items.push_back(std::move(it));
}

inline void cmd_coprod(Report& r, Workspace& ws, const Options& opt, const std::string& left, const std::string& right,
                       const std::string& name) {
  Coproduct c = coproduct(ws.theory(left), ws.theory(right), name);
  r.output = print_theory(*c.apex, opt.print());
  r.items.push_back(Item{"coproduct", c.apex->name(), "ok", {}, json{{"declarations", c.apex->size()}}, {}});
}

inline void cmd_coeq(Report& r, Workspace& ws, const Options& opt, const std::string& first, const std::string& second,
                     const std::string& name) {
  Coequalizer q = coequalizer(valid_interp(ws, first, opt), valid_interp(ws, second, opt), opt.rules, opt.fuel, name);
  r.output = print_theory(*q.apex, opt.print());
  r.items.push_back(Item{"coequalizer", q.apex->name(), "ok", {}, json{{"declarations", q.apex->size()}}, {}});
}

inline void cmd_poly(Report& r, Workspace& ws, const Options& opt, const std::string& theory) {
  PolyTheory p = poly_apply(ws.theory(theory), opt.rules, opt.fuel);
  r.output = print_theory(*p.theory, opt.print());
  r.items.push_back(Item{"poly", p.theory->name(), "ok", {}, json{{"declarations", p.theory->size()}}, {}});
}

inline void cmd_verify_poly(Report& r, Workspace& ws, const Options& opt, std::vector<std::string> samples,
                            const std::string& mutate) {
  if (!mutate.empty() && mutate != "subst") throw UsageError("unknown mutation '" + mutate + "'");
  if (samples.empty()) samples = default_poly_samples();
  std::vector<TheoryPtr> ts;
  for (const auto& s : samples) ts.push_back(ws.theory(s));
  for (const auto& c :
       verify_polynomial_axioms(ts, opt.rules, opt.fuel, mutate == "subst" ? Mutation::Subst : Mutation::None))
    r.items.push_back(axiom_item("axiom", c));
}

inline void cmd_unit_triangles(Report& r, const Options& opt) {
  const TheoryPtr mon = share(stdlib_theory("Mon"));
  const Coproduct mxb = coproduct(mon, ty0());
  struct Instance {
    std::string label;
    TheoryPtr base;
    Interpretation leg;
  };
  const std::vector<Instance> instances = {
      {"Ty0 id", ty0(), identity(ty0())},
      {"Mon x Ty0 pi2", mon, mxb.inr},
      {"El0 p", ty0(), el0_leg()},
  };
  for (const auto& in : instances) {
    try {
      for (const auto& c : check_unit_equations(in.leg, in.label, opt.rules, opt.fuel)) r.items.push_back(axiom_item("equation", c));
      for (const auto& c : check_triangles(in.base, in.leg, in.label, opt.rules, opt.fuel))
        r.items.push_back(axiom_item("equation", c));
    } catch (const std::exception& e) {
      r.items.push_back(error_item("equation", in.label, e));
    }
  }
  for (const auto& g : {ty0(), mon, el0()}) {
    try {
      for (const auto& c : check_recovery(g, opt.rules, opt.fuel)) {
        if (c.axiom == "recover-proj" && g != ty0()) continue;
        r.items.push_back(axiom_item("equation", c));
      }
    } catch (const std::exception& e) {
      r.items.push_back(error_item("equation", "recover-wk[" + g->name() + "]", e));
    }
  }
}

inline void cmd_pi_square(Report& r, const Options& opt) {
  if (!opt.rules.pi) throw Error(ErrorCode::RuleDisabled, "pi-square needs --rules pi");
  PiSquare s = pi_square(opt.fuel);
  std::set<Rule> used;
  for (const auto& c : s.checks) {
    r.items.push_back(axiom_item("square", c));
    if (c.axiom.rfind("round-trip", 0) == 0) used.insert(c.rules_used.begin(), c.rules_used.end());
  }
  std::set<Rule> logical;
  for (Rule x : used)
    if (x == Rule::Beta || x == Rule::Eta || x == Rule::Axiom) logical.insert(x);
  const bool exact = logical == std::set<Rule>{Rule::Beta, Rule::Eta};
  Item i{"square", "beta-eta-only", exact ? "Proved" : "Failed", {}, json::object(), {}};
  json names = json::array();
  for (Rule x : logical) names.push_back(rule_name(x));
  i.data["rules"] = std::move(names);
  if (!exact) i.message = "the inverse proofs do not use exactly beta and eta";
  r.items.push_back(std::move(i));
  r.output = print_interp(as_def(s.comparison), opt.print()) + print_interp(as_def(s.inverse), opt.print());
}

inline void cmd_present(Report& r, Workspace& ws, const Options& opt, const std::string& theory) {
  TheoryPtr t = ws.theory(theory);
  const auto clauses = limit_presentation(*t);
  std::ostringstream os;
  for (const auto& c : clauses) {
    os << c.decl << ": " << clause_name(c.kind) << " (n=" << c.n << ")\n";
    for (const auto& a : c.arrows) {
      std::ostringstream body;
      for (const auto& d : a.src->decls()) {
        auto it = a.map.find(d.name);
        if (it == a.map.end()) continue;
        body << "    " << d.name << " |-> " << print_expr(it->second.body, it->second.params, opt.print()) << "\n";
      }
      os << "  " << a.name << " : " << a.src->name() << " -> prefix\n" << body.str();
    }
  }
  r.output = os.str();
  Reconstruction rec = reconstruct(t, clauses, opt.rules, opt.fuel);
  CheckReport rep = check_interpretation(rec.to, opt.rules, opt.fuel);
  for (auto& o : check_interpretation(rec.from, opt.rules, opt.fuel).items) rep.items.push_back(std::move(o));
  for (auto& o : check_mutually_inverse(rec.to, rec.from, opt.rules, opt.fuel).items) rep.items.push_back(std::move(o));
  Item i = report_item("reconstruction", t->name(), rep);
  i.data["clauses"] = clauses.size();
  r.items.push_back(std::move(i));
}

inline void cmd_models(Report& r, Workspace& ws, const std::string& theory, int max_size, bool count_only,
                       std::size_t max_cells) {
  TheoryPtr t = ws.theory(theory);
  const auto models = enumerate_models(*t, max_size, ModelBudget{max_cells});
  Item i{"models", t->name(), "ok", {}, json::object(), {}};
  i.data["max_size"] = max_size;
  i.data["count"] = models.size();
  if (count_only) {
    r.output = std::to_string(models.size()) + "\n";
    r.bare = true;
  } else {
    std::ostringstream os;
    json all = json::array();
    for (std::size_t n = 0; n < models.size(); ++n) {
      os << "model " << n << ":";
      for (const auto& [sym, table] : models[n].tables)
        for (const auto& [args, v] : table) os << " " << sym << cell_key(args) << "=" << v;
      os << "\n";
      all.push_back(model_json(models[n]));
    }
    r.output = os.str();
    i.data["models"] = std::move(all);
  }
  r.items.push_back(std::move(i));
}

inline std::string stdlib_file_name(const std::string& name) { return name + ".gat"; }

inline void cmd_stdlib(Report& r, const std::string& dir) {
  if (dir.empty()) {
    for (const auto& n : stdlib_names()) r.output += n + "\n";
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  for (const auto& n : stdlib_names()) {
    const auto path = std::filesystem::path(dir) / stdlib_file_name(n);
    std::ofstream out(path, std::ios::binary);
    out << stdlib_source(n);
    Item i{"emit", n, out ? "ok" : "error", {}, json::object(), {}};
    if (!out) i.message = "cannot write " + path.string();
    i.data["path"] = path.generic_string();
    r.items.push_back(std::move(i));
  }
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gatc: checker and constructions for generalized algebraic theories", "gatc"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  std::size_t fuel_nodes = Fuel{}.max_eq_nodes;
  std::size_t fuel_iters = Fuel{}.max_iterations;
  std::string rules = "base";
  app.add_option("--fuel-nodes", fuel_nodes, "node budget of the equality engine")->envname("GATC_FUEL_NODES");
  app.add_option("--fuel-iters", fuel_iters, "saturation rounds of the equality engine");
  app.add_option("--rules", rules, "rule set")->check(CLI::IsMember({"base", "pi"}));
  app.add_flag("--json", opt.json, "print the report as JSON");
  app.add_flag("--trace", opt.trace, "include proof traces");
  app.add_flag("--unicode", opt.unicode, "print => and Pi with Unicode symbols");

  std::string file, theory, name, base, total, along, left, right, first, second, mutate, emit;
  std::vector<std::string> equiv, samples;
  EqArgs eq;
  int max_size = 2;
  bool count_only = false;
  std::size_t max_cells = ModelBudget{}.max_cells;

  auto* check = app.add_subcommand("check", "check theories, interpretations and judgments of a file");
  check->add_option("file", file)->required();
  check->add_option("--equiv", equiv, "also compare two interpretations")->expected(2);

  auto* eqc = app.add_subcommand("eq", "decide an equation by saturation");
  eqc->add_option("file", file);
  eqc->add_option("--theory", eq.theory)->required();
  eqc->add_option("--ctx", eq.ctx);
  eqc->add_option("--lhs", eq.lhs)->required();
  eqc->add_option("--rhs", eq.rhs)->required();

  auto* po = app.add_subcommand("pushout", "pushout of a subtheory inclusion along an interpretation");
  po->add_option("file", file);
  po->add_option("--base", base)->required();
  po->add_option("--total", total)->required();
  po->add_option("--along", along)->required();
  po->add_option("--name", name);

  auto* cp = app.add_subcommand("coprod", "disjoint union of two theories");
  cp->add_option("file", file);
  cp->add_option("--left", left)->required();
  cp->add_option("--right", right)->required();
  cp->add_option("--name", name);

  auto* cq = app.add_subcommand("coeq", "coequalizer of two parallel interpretations");
  cq->add_option("file", file);
  cq->add_option("--first", first)->required();
  cq->add_option("--second", second)->required();
  cq->add_option("--name", name);

  auto* pl = app.add_subcommand("poly", "print the hypothesized theory");
  pl->add_option("file", file);
  pl->add_option("--theory", theory)->required();

  auto* vp = app.add_subcommand("verify-poly", "prove the polynomial functor axioms");
  vp->add_option("--samples", samples)->delimiter(',');
  vp->add_option("--mutate", mutate, "corrupt a structure arrow")->check(CLI::IsMember({"subst"}));

  auto* ut = app.add_subcommand("unit-triangles", "check the unit equations and triangle identities");
  auto* ps = app.add_subcommand("pi-square", "check the Pi pullback square");

  auto* pr = app.add_subcommand("present", "limit presentation of a theory");
  pr->add_option("file", file);
  pr->add_option("--theory", theory)->required();

  auto* md = app.add_subcommand("models", "enumerate finite models");
  md->add_option("file", file);
  md->add_option("--theory", theory)->required();
  md->add_option("--max-size", max_size)->required()->check(CLI::NonNegativeNumber);
  md->add_flag("--count-only", count_only);
  md->add_option("--max-cells", max_cells, "search budget in table cells");

  auto* sl = app.add_subcommand("stdlib", "list or write the library theories");
  sl->add_option("--emit", emit, "directory to write .gat files into");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  opt.fuel = Fuel{fuel_nodes, fuel_iters};
  opt.rules = rules == "pi" ? RuleSet::with_pi() : RuleSet::base();

  Report r;
  CLI::App* sub = app.get_subcommands().front();
  r.command = sub->get_name();
  try {
    Workspace ws(opt, file);
    try {
      if (sub == check) cmd_check(r, ws, opt, equiv);
      else if (sub == eqc) cmd_eq(r, ws, opt, eq);
      else if (sub == po) cmd_pushout(r, ws, opt, base, total, along, name);
      else if (sub == cp) cmd_coprod(r, ws, opt, left, right, name);
      else if (sub == cq) cmd_coeq(r, ws, opt, first, second, name);
      else if (sub == pl) cmd_poly(r, ws, opt, theory);
      else if (sub == vp) cmd_verify_poly(r, ws, opt, samples, mutate);
      else if (sub == ut) cmd_unit_triangles(r, opt);
      else if (sub == ps) cmd_pi_square(r, opt);
      else if (sub == pr) cmd_present(r, ws, opt, theory);
      else if (sub == md) cmd_models(r, ws, theory, max_size, count_only, max_cells);
      else if (sub == sl) cmd_stdlib(r, emit);
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      if (e.inconclusive())
        r.items.push_back(Item{r.command, "", "Inconclusive", e.what(), json::object(), {}});
      else
        r.items.push_back(error_item(r.command, "", e));
    } catch (const std::exception& e) {
      r.items.push_back(error_item(r.command, "", e));
    }
  } catch (const UsageError& e) {
    r.usage_error = true;
    r.items.push_back(Item{"usage", r.command, "error", e.what(), json::object(), {}});
  }
  if (opt.json) {
    out << render_json(r, opt);
  } else {
    const std::string text = render_text(r, opt);
    (r.usage_error ? err : out) << text;
  }
  return r.exit_code();
}

/// `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"gatc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace gatc::cli
