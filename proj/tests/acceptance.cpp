// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.  Usage: acceptance <scratch-dir>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gatc/cli.hpp"
#include "gatc/gatcat.hpp"
#include "gatc/models.hpp"
#include "gatc/poly.hpp"
#include "gatc/stdlib.hpp"
#include "gatc/syntax.hpp"

namespace fs = std::filesystem;
using namespace gatc;

namespace {

fs::path g_scratch;
std::string g_reason;

bool fail(const std::string& why) {
  g_reason = why;
  return false;
}

int gatc_run(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = cli::run(args, o, e);
  if (out) *out = o.str() + e.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string corpus(const std::string& file) { return std::string(GATC_CORPUS_DIR) + "/" + file; }

TheoryPtr lib(const std::string& name) { return share(stdlib_theory(name)); }

Interpretation carrier_map() { return {"Carrier", ty0(), lib("Mon"), {{"A0", SymbolImage{{}, Expr::app("Mon")}}}}; }

bool corpus_well_formed() {
  const fs::path dir = g_scratch / "stdlib";
  fs::remove_all(dir);
  if (gatc_run({"stdlib", "--emit", dir.string()}) != 0) return fail("stdlib --emit");
  for (const char* name : {"Cat", "Mon", "CatPt", "Ty0", "Ty1", "Ty2", "Ty3", "El0", "El1", "El2", "El3"}) {
    if (gatc_run({"check", (dir / (std::string(name) + ".gat")).string()}) != 0) return fail(std::string("check ") + name);
  }
  if (gatc_run({"--rules", "pi", "check", (dir / "STLC.gat").string()}) != 0) return fail("check STLC under pi");
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("MLTT", 0) != 0) continue;
    const std::string once = slurp(entry.path());
    SourceFile f = parse(once);
    if (f.theories.size() != 1) return fail("MLTT-N parse");
    if (print_theory(f.theories[0].name, f.theories[0].pre) != once) return fail("MLTT-N round trip");
    return true;
  }
  return fail("MLTT-N not emitted");
}

bool endomorphisms() {
  return gatc_run({"check", corpus("endomorphisms.gat"), "--equiv", "Endo", "EndoU"}) == 0 ||
         fail("check endomorphisms.gat --equiv Endo EndoU");
}

bool polynomial_axioms() {
  auto checks = verify_polynomial_axioms({detail::ty_theory(-1), ty0(), el0(), lib("Mon"), lib("Cat")});
  std::set<std::string> proved;
  for (const auto& c : checks) {
    if (c.status != Status::Proved) return fail(c.axiom + "[" + c.sample + "] " + status_name(c.status));
    if (c.axiom != "P1" && c.axiom_instances != 0) return fail(c.axiom + " used axiom instances");
    proved.insert(c.axiom);
  }
  if (proved != std::set<std::string>{"P1", "P2", "P3", "P4"}) return fail("missing axioms");
  if (gatc_run({"verify-poly"}) != 0) return fail("verify-poly exit");
  std::string out;
  if (gatc_run({"verify-poly", "--mutate", "subst"}, &out) != 1) return fail("mutation did not exit 1");
  if (out.find("P2") == std::string::npos || out.find("Failed") == std::string::npos) return fail("mutation not reported on P2");
  return true;
}

bool iterate_isomorphisms() {
  for (int n = 0; n <= 2; ++n) {
    const auto un = static_cast<std::size_t>(n);
    IsoCheck t = check_poly_iso(detail::ty_theory(n), detail::ty_theory(n + 1));
    IsoCheck e = check_poly_iso(detail::el_theory(un), detail::el_theory(un + 1));
    if (t.status != Status::Proved) return fail(t.label);
    if (e.status != Status::Proved) return fail(e.label);
  }
  return true;
}

bool unit_and_triangles() {
  std::string out;
  return gatc_run({"unit-triangles"}, &out) == 0 || fail(out);
}

bool pointed_monoid_pushout() {
  Pushout p = pushout(ty0(), el0(), carrier_map());
  SourceFile f = parse(slurp(corpus("pointed_monoid.gat")), stdlib_lookup);
  const Theory displayed = check_theory(f.theory("PointedMon")->pre, "PointedMon");
  return canonical_print(*p.apex) == canonical_print(displayed) || fail("canonical prints differ");
}

std::size_t naive_monoids(int k) {
  std::size_t count = 0;
  for (int s = 1; s <= k; ++s) {
    std::vector<int> t(static_cast<std::size_t>(s * s), 0);
    std::function<void(std::size_t)> fill = [&](std::size_t i) {
      if (i < t.size()) {
        for (int v = 0; v < s; ++v) {
          t[i] = v;
          fill(i + 1);
        }
        return;
      }
      auto op = [&](int a, int b) { return t[static_cast<std::size_t>(a * s + b)]; };
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b)
          for (int c = 0; c < s; ++c)
            if (op(op(a, b), c) != op(a, op(b, c))) return;
      for (int e = 0; e < s; ++e) {
        bool unit = true;
        for (int a = 0; a < s; ++a) unit = unit && op(e, a) == a && op(a, e) == a;
        if (unit) ++count;
      }
    };
    fill(0);
  }
  return count;
}

bool model_duality() {
  DualityReport a = check_colimit_duality(coproduct(ty0(), ty0()), 2);
  if (!a.bijection() || a.colimit_models != 9) return fail("coproduct(Ty0,Ty0)");
  DualityReport b = check_colimit_duality(coproduct(lib("Mon"), ty0()), 2);
  if (!b.bijection()) return fail("coproduct(Mon,Ty0)");
  DualityReport c = check_colimit_duality(pushout(ty0(), el0(), carrier_map()), ty0(), carrier_map(), 2);
  if (!c.bijection()) return fail("pointed-monoid pushout");
  const std::size_t mon = enumerate_models(stdlib_theory("Mon"), 2).size();
  if (mon != naive_monoids(2)) return fail("Mon count " + std::to_string(mon) + " vs " + std::to_string(naive_monoids(2)));
  return true;
}

bool limit_reconstruction() {
  for (const auto& name : stdlib_names()) {
    if (stdlib_needs_pi(name)) continue;
    TheoryPtr t = lib(name);
    Reconstruction r = reconstruct(t, limit_presentation(*t));
    if (!check_mutually_inverse(r.to, r.from).ok()) return fail(name);
  }
  return true;
}

bool pi_square_check() {
  std::string out;
  if (gatc_run({"--rules", "pi", "pi-square"}, &out) != 0) return fail(out);
  PiSquare s = pi_square();
  std::set<Rule> used;
  for (const auto& c : s.checks) {
    if (c.status != Status::Proved) return fail(c.axiom);
    if (c.axiom_instances != 0) return fail(c.axiom + " used axiom instances");
    used.insert(c.rules_used.begin(), c.rules_used.end());
  }
  if (!used.count(Rule::Beta) || !used.count(Rule::Eta)) return fail("beta/eta not exercised");
  return true;
}

Expr word(std::mt19937& rng, int depth) {
  static const char* vars[] = {"p", "q", "r"};
  int k = static_cast<int>(rng() % (depth == 0 ? 4 : 5));
  if (k == 3) return Expr::app("u");
  if (k < 3) return Expr::var(vars[k]);
  return Expr::app("mul", {word(rng, depth - 1), word(rng, depth - 1)});
}

bool robustness() {
  std::mt19937 rng(31337);
  for (int i = 0; i < 10000; ++i) {
    std::string s(rng() % 160, '\0');
    for (auto& c : s) c = static_cast<char>(rng() & 0xff);
    try {
      (void)parse(s, stdlib_lookup);
    } catch (const Error&) {
    }
  }
  const Theory& mon = stdlib_theory("Mon");
  const std::vector<Fuel> ladder = {{4, 1}, {16, 2}, {64, 3}, {256, 4}, {10000, 8}};
  for (int i = 0; i < 100; ++i) {
    Expr l = word(rng, 3), r = word(rng, 3);
    bool before = false;
    for (const Fuel& f : ladder) {
      EqVerdict x = eq_check(mon.pre(), l, r, {}, f);
      EqVerdict y = eq_check(mon.pre(), l, r, {}, f);
      if (x.proved != y.proved || x.nodes != y.nodes || x.rounds != y.rounds) return fail("nondeterministic eq_check");
      if (before && !x.proved) return fail("proof lost with more fuel");
      before = x.proved;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  g_scratch = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "gatc_acceptance";
  fs::create_directories(g_scratch);
  const std::vector<std::pair<const char*, bool (*)()>> criteria = {
      {"corpus well-formedness", corpus_well_formed},
      {"endomorphism interpretation", endomorphisms},
      {"polynomial functor axioms", polynomial_axioms},
      {"iterated isomorphisms", iterate_isomorphisms},
      {"unit and triangle identities", unit_and_triangles},
      {"pointed monoid pushout", pointed_monoid_pushout},
      {"model oracle duality", model_duality},
      {"limit presentation reconstruction", limit_reconstruction},
      {"pi square", pi_square_check},
      {"robustness", robustness},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    g_reason.clear();
    bool ok = false;
    try {
      ok = criteria[i].second();
    } catch (const std::exception& e) {
      g_reason = e.what();
    }
    std::cout << (ok ? "PASS" : "FAIL") << ' ' << (i + 1) << ' ' << criteria[i].first;
    if (!ok && !g_reason.empty()) std::cout << ": " << g_reason;
    std::cout << '\n';
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
