#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cli.hpp"

using json = nlohmann::json;

namespace {

mqg::cli::Result run(std::vector<std::string> args) { return mqg::cli::run(args); }

json report(const mqg::cli::Result& r) { return json::parse(r.report); }

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST(Cli, CheckQuantumTwo) {
  auto r = run({"check", "quantum", "--n", "2"});
  EXPECT_EQ(r.code, 0) << r.diagnostic;
  json j = report(r);
  EXPECT_EQ(j["schema"], "1");
  EXPECT_TRUE(j["pass"].get<bool>());
  std::vector<std::string> names;
  for (auto& c : j["checks"]) names.push_back(c["check"]);
  EXPECT_NE(std::find(names.begin(), names.end(), "hecke"), names.end());
  EXPECT_NE(std::find(names.begin(), names.end(), "braid"), names.end());
}

TEST(Cli, H2Sl2) {
  auto r = run({"lie", "h2", "--algebra", "sl2"});
  ASSERT_EQ(r.code, 0) << r.diagnostic;
  json j = report(r);
  EXPECT_TRUE(j["result"]["sigma"].empty());
  EXPECT_EQ(j["result"]["dim_essential"], 0);
}

TEST(Cli, H2Sl3Specialized) {
  auto gen = report(run({"lie", "h2", "--algebra", "sl3", "--r0", "symbolic"}));
  EXPECT_TRUE(gen["result"]["sigma"].empty());
  auto r = run({"lie", "h2", "--algebra", "sl3", "--r0", "symbolic", "--specialize", "t12=1/6"});
  ASSERT_EQ(r.code, 0) << r.diagnostic;
  json j = report(r);
  ASSERT_EQ(j["result"]["sigma"].size(), 1u);
  EXPECT_EQ(j["result"]["dim_essential"], 1);
}

TEST(Cli, DeformSpaceOnSurface) {
  std::string params = temp_file("mqg_cli_case2.json", R"({"n":3,"assign":{"q_12":"q_23","q_13":"a*q_23^2"}})");
  auto r = run({"deform", "space", "--params", params});
  ASSERT_EQ(r.code, 0) << r.diagnostic;
  EXPECT_GE(report(r)["result"]["dim_essential"].get<int>(), 1);
  auto g = run({"deform", "space", "--n", "3"});
  EXPECT_EQ(report(g)["result"]["dim_essential"], 0);
}

TEST(Cli, ElementaryExact) {
  auto r = run({"deform", "elementary", "--n", "3", "--i", "1", "--j", "3", "--case", "2"});
  EXPECT_EQ(r.code, 0) << r.diagnostic;
  EXPECT_TRUE(report(r)["pass"].get<bool>());
}

TEST(Cli, InputErrors) {
  for (auto args : std::vector<std::vector<std::string>>{{"lie", "foo"},
                                                         {"check", "quantum", "--n", "9"},
                                                         {"lie", "h2", "--algebra", "sl7"},
                                                         {"lie", "h2", "--algebra", "sl2", "--r0", "12=1"},
                                                         {"deform", "space", "--params", "/nonexistent.json"},
                                                         {"check", "quantum", "--n", "2", "--specialize", "a=="}}) {
    auto r = run(args);
    EXPECT_EQ(r.code, 2) << args[0] << " " << args[1];
    EXPECT_TRUE(r.report.empty());
    EXPECT_FALSE(r.diagnostic.empty());
  }
}

TEST(Cli, FailingCheckExitsOne) {
  // the sl restriction does not hold at symbolic parameters
  auto r = run({"deform", "sl-restriction", "--n", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(report(r)["pass"].get<bool>());
}

TEST(Cli, ExplicitAlgebra) {
  std::string alg = temp_file("mqg_cli_abelian.json",
                              R"({"dim":2,"labels":["x","y"],"eps":[],"r":[{"i":1,"j":2,"v":"1"}]})");
  auto ok = run({"manin", "split", "--algebra", alg});
  EXPECT_EQ(ok.code, 0) << ok.diagnostic;
  // a degenerate symmetric part cannot span the double
  std::string bad = temp_file("mqg_cli_abelian_bad.json",
                              R"({"dim":2,"labels":["x","y"],"eps":[],"r":[{"i":1,"j":1,"v":"1"}]})");
  auto r = run({"manin", "split", "--algebra", bad});
  EXPECT_EQ(r.code, 1);
  bool span_failed = false;
  json j = report(r);
  for (auto& c : j["checks"])
    if (c["check"] == "span") span_failed = !c["pass"].get<bool>();
  EXPECT_TRUE(span_failed);
}

TEST(Cli, SlJsonMatchesBuiltin) {
  std::string alg = temp_file("mqg_cli_sl3.json", R"({"type":"sl","n":3})");
  json a = report(run({"lie", "cybe", "--algebra", alg, "--r0", "symbolic"}));
  json b = report(run({"lie", "cybe", "--algebra", "sl3", "--r0", "symbolic"}));
  EXPECT_EQ(a["result"], b["result"]);
  EXPECT_TRUE(b["pass"].get<bool>());
}

TEST(Cli, OutFile) {
  auto p = (std::filesystem::temp_directory_path() / "mqg_cli_out.json").string();
  auto r = run({"twist", "gl2", "--out", p});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out_path, p);
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> cmds = {{"check", "quantum", "--n", "3"},
                                                {"lie", "cobracket", "--algebra", "sl3", "--r0", "symbolic"},
                                                {"manin", "iso", "--algebra", "sl2"},
                                                {"deform", "normal-form", "--n", "3", "--i", "1", "--j", "3", "--case", "2"}};
  for (auto& c : cmds) {
    auto a = run(c), b = run(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.report, b.report) << c[0] << " " << c[1];
  }
}
