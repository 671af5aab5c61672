#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gatc/check.hpp"
#include "gatc/syntax.hpp"

namespace gatc {

namespace stdlib_detail {

inline const char* const kCat = R"(theory Cat {
  sym Ob : () => Type
  sym Hom : (x1 : Ob, x2 : Ob) => Type
  sym id : (x : Ob) => Hom(x, x)
  sym comp : (x1 : Ob, x2 : Ob, x3 : Ob, y1 : Hom(x1, x2), y2 : Hom(x2, x3)) => Hom(x1, x3)
  ax idl : (x1 : Ob, x2 : Ob, y : Hom(x1, x2)) => comp(x1, x1, x2, id(x1), y) = y : Hom(x1, x2)
  ax idr : (x1 : Ob, x2 : Ob, y : Hom(x1, x2)) => comp(x1, x2, x2, y, id(x2)) = y : Hom(x1, x2)
  ax assoc : (x1 : Ob, x2 : Ob, x3 : Ob, x4 : Ob, y1 : Hom(x1, x2), y2 : Hom(x2, x3), y3 : Hom(x3, x4)) => comp(x1, x3, x4, comp(x1, x2, x3, y1, y2), y3) = comp(x1, x2, x4, y1, comp(x2, x3, x4, y2, y3)) : Hom(x1, x4)
}
)";

inline const char* const kMon = R"(theory Mon {
  sym Mon : () => Type
  sym u : () => Mon
  sym mul : (y1 : Mon, y2 : Mon) => Mon
  ax unitl : (y : Mon) => mul(u, y) = y : Mon
  ax unitr : (y : Mon) => mul(y, u) = y : Mon
  ax assoc : (y1 : Mon, y2 : Mon, y3 : Mon) => mul(mul(y1, y2), y3) = mul(y1, mul(y2, y3)) : Mon
}
)";

inline const char* const kCatPt = R"(theory CatPt extends Cat {
  sym b : () => Ob
}
)";

inline const char* const kStlc = R"(theory STLC {
  sym Ty : () => Type
  sym El : (t : Ty) => Type
  sym Fun : (t : Ty, s : Ty) => Ty
  sym abs : (t : Ty, s : Ty, f : Pi(x : El(t)) El(s)) => El(Fun(t, s))
  sym app : (t : Ty, s : Ty, g : El(Fun(t, s)), a : El(t)) => El(s)
  ax beta : (t : Ty, s : Ty, f : Pi(x : El(t)) El(s), a : El(t)) => app(t, s, abs(t, s, f), a) = f @ a : El(s)
  ax eta : (t : Ty, s : Ty, g : El(Fun(t, s))) => abs(t, s, lam(x : El(t)) app(t, s, g, x)) = g : El(Fun(t, s))
}
)";

inline const char* const kMlttN = R"(theory MLTT_N {
  sym Ty : () => Type
  sym El : (t : Ty) => Type
  sym N : () => Ty
  sym zero : () => El(N)
  sym s : (n : El(N)) => El(N)
  sym r : (n : El(N), P : Pi(x : El(N)) Ty, z : El(P @ zero), f : Pi(x : El(N)) Pi(y : El(P @ x)) El(P @ s(x))) => El(P @ n)
  ax rzero : (P : Pi(x : El(N)) Ty, z : El(P @ zero), f : Pi(x : El(N)) Pi(y : El(P @ x)) El(P @ s(x))) => r(zero, P, z, f) = z : El(P @ zero)
  ax rsucc : (n : El(N), P : Pi(x : El(N)) Ty, z : El(P @ zero), f : Pi(x : El(N)) Pi(y : El(P @ x)) El(P @ s(x))) => r(s(n), P, z, f) = f @ n @ r(n, P, z, f) : El(P @ s(n))
}
)";

struct Entry {
  std::string name;
  std::string block;
  const char* source;
  bool pi;
};

inline const std::vector<Entry>& text_entries() {
  static const std::vector<Entry> entries = {
      {"Cat", "Cat", kCat, false},
      {"Mon", "Mon", kMon, false},
      {"CatPt", "CatPt", kCatPt, false},
      {"STLC", "STLC", kStlc, true},
      {"MLTT-N", "MLTT_N", kMlttN, true},
  };
  return entries;
}

}  // namespace stdlib_detail

/// Names in the order they are listed and emitted.
inline const std::vector<std::string>& stdlib_names() {
  static const std::vector<std::string> names = {"Cat", "Mon", "CatPt", "Ty0", "Ty1", "Ty2", "Ty3",
                                                 "El0", "El1", "El2", "El3", "STLC", "MLTT-N"};
  return names;
}

/// Every library theory, each certified once on first use.
inline const std::map<std::string, Theory>& stdlib() {
  static const std::map<std::string, Theory> lib = [] {
    std::map<std::string, Theory> out;
    for (std::size_t n = 0; n <= 3; ++n) {
      out.emplace("Ty" + std::to_string(n), mk_Ty(n));
      out.emplace("El" + std::to_string(n), mk_El(n));
    }
    std::map<std::string, Pretheory> texts;
    auto lookup = [&texts](const std::string& name) -> std::optional<Pretheory> {
      auto it = texts.find(name);
      if (it == texts.end()) return std::nullopt;
      return it->second;
    };
    for (const auto& e : stdlib_detail::text_entries()) {
      SourceFile f = parse(e.source, lookup);
      const TheoryDef& def = f.theories.front();
      texts.emplace(def.name, def.pre);
      out.emplace(e.name, check_theory(def.pre, e.name, e.pi ? RuleSet::with_pi() : RuleSet::base()));
    }
    return out;
  }();
  return lib;
}

/// `MLTT_N` is accepted for `MLTT-N`, which is not an identifier.
inline const Theory* stdlib_find(const std::string& name) {
  const auto& lib = stdlib();
  auto it = lib.find(name == "MLTT_N" ? std::string("MLTT-N") : name);
  return it == lib.end() ? nullptr : &it->second;
}

inline const Theory& stdlib_theory(const std::string& name) {
  if (const Theory* t = stdlib_find(name)) return *t;
  throw Error(ErrorCode::UnknownSymbol, "no library theory named '" + name + "'", name);
}

inline std::optional<Pretheory> stdlib_lookup(const std::string& name) {
  if (const Theory* t = stdlib_find(name)) return t->pre();
  return std::nullopt;
}

inline bool stdlib_needs_pi(const std::string& name) { return name == "STLC" || name == "MLTT-N" || name == "MLTT_N"; }

/// Source text of a library theory as `stdlib --emit` writes it.
inline std::string stdlib_source(const std::string& name) {
  const Theory& t = stdlib_theory(name);
  return print_theory(name == "MLTT-N" ? std::string("MLTT_N") : name, t.pre());
}

}  // namespace gatc
