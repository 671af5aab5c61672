#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gatc/cli.hpp"
#include "gatc/stdlib.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome gatc_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = gatc::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& file) { return std::string(GATC_CORPUS_DIR) + "/" + file; }

}  // namespace

TEST(Cli, VerifyPolyAndItsMutation) {
  EXPECT_EQ(gatc_run({"verify-poly"}).code, 0);
  Outcome bad = gatc_run({"verify-poly", "--mutate", "subst"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.out.find("Failed"), std::string::npos);
}

TEST(Cli, ModelCountIsBare) {
  Outcome r = gatc_run({"models", "--theory", "Ty0", "--max-size", "2", "--count-only"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3\n");
}

TEST(Cli, ForwardReferenceIsPositioned) {
  Outcome r = gatc_run({"check", corpus("corrupted.gat")});
  EXPECT_EQ(r.code, 1);
  const std::string all = r.out + r.err;
  EXPECT_NE(all.find("ForwardReference"), std::string::npos);
  EXPECT_NE(all.find("corrupted.gat:4:3"), std::string::npos);
}

TEST(Cli, CheckCorpusFiles) {
  EXPECT_EQ(gatc_run({"check", corpus("endomorphisms.gat"), "--equiv", "Endo", "EndoU"}).code, 0);
  EXPECT_EQ(gatc_run({"check", corpus("pointed_monoid.gat")}).code, 0);
  EXPECT_EQ(gatc_run({"check", corpus("judgments.gat")}).code, 0);
}

TEST(Cli, UsageAndParseErrorsExitThree) {
  EXPECT_EQ(gatc_run({}).code, 3);
  EXPECT_EQ(gatc_run({"check", corpus("does_not_exist.gat")}).code, 3);
  const fs::path bad = fs::temp_directory_path() / "gatc_cli_bad.gat";
  std::ofstream(bad) << "theory T {\n  sym A0 : ( => Type\n}\n";
  Outcome r = gatc_run({"check", bad.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE((r.out + r.err).find("2:12"), std::string::npos);
  fs::remove(bad);
}

TEST(Cli, JsonReportIsDeterministic) {
  const std::vector<std::string> args = {"--json", "unit-triangles"};
  Outcome a = gatc_run(args);
  Outcome b = gatc_run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j.at("schema"), "gatc-report/1");
  EXPECT_EQ(j.at("command"), "unit-triangles");
  EXPECT_EQ(j.at("exit"), 0);
  EXPECT_FALSE(j.at("items").empty());
}

TEST(Cli, FuelFromEnvironment) {
  ::setenv("GATC_FUEL_NODES", "777", 1);
  Outcome r = gatc_run({"--json", "verify-poly"});
  ::unsetenv("GATC_FUEL_NODES");
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("fuel").at("nodes"), 777);
  Outcome flag = gatc_run({"--json", "--fuel-nodes", "555", "verify-poly"});
  EXPECT_EQ(nlohmann::json::parse(flag.out).at("fuel").at("nodes"), 555);
}

TEST(Cli, EquationVerdicts) {
  EXPECT_EQ(gatc_run({"eq", "--theory", "Mon", "--ctx", "y : Mon", "--lhs", "mul(u, y)", "--rhs", "y"}).code, 0);
  EXPECT_EQ(gatc_run({"eq", "--theory", "Mon", "--ctx", "y : Mon, z : Mon", "--lhs", "mul(y, z)", "--rhs", "mul(z, y)"}).code,
            2);
}

TEST(Cli, PiSquareNeedsPiRules) {
  EXPECT_EQ(gatc_run({"--rules", "pi", "pi-square"}).code, 0);
  EXPECT_EQ(gatc_run({"pi-square"}).code, 1);
}

TEST(Cli, Colimits) {
  Outcome p = gatc_run({"pushout", corpus("pointed_monoid.gat"), "--base", "Ty0", "--total", "El0", "--along", "Carrier"});
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("e0"), std::string::npos);
  EXPECT_EQ(gatc_run({"coprod", "--left", "Mon", "--right", "Ty0"}).code, 0);
  EXPECT_EQ(gatc_run({"coeq", corpus("pointed_monoid.gat"), "--first", "Carrier", "--second", "Carrier2"}).code, 0);
  EXPECT_EQ(gatc_run({"present", "--theory", "Cat"}).code, 0);
}

TEST(Cli, EmittedStdlibChecks) {
  const fs::path dir = fs::temp_directory_path() / "gatc_cli_stdlib";
  fs::remove_all(dir);
  ASSERT_EQ(gatc_run({"stdlib", "--emit", dir.string()}).code, 0);
  for (const auto& name : gatc::stdlib_names()) {
    SCOPED_TRACE(name);
    const fs::path file = dir / (name + ".gat");
    ASSERT_TRUE(fs::exists(file));
    std::vector<std::string> args = {"check", file.string()};
    if (gatc::stdlib_needs_pi(name)) args.insert(args.begin(), {"--rules", "pi"});
    EXPECT_EQ(gatc_run(args).code, 0);
  }
  EXPECT_NE(gatc_run({"check", (dir / "STLC.gat").string()}).code, 0);
  fs::remove_all(dir);
}
