#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bdalloc/cli.hpp"

namespace bdalloc::cli {
namespace {

const std::string kData = BDALLOC_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(RunConfig cfg, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run(cfg, in, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(std::string command, std::string input, bool json = true) {
  RunConfig c;
  c.command = std::move(command);
  c.input = std::move(input);
  c.json = json;
  return c;
}

class TempFile {
 public:
  explicit TempFile(const std::string& content) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("bdalloc_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + ".json");
    std::ofstream(path_) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

TEST(CliDecompose, Fig1Json) {
  auto r = invoke(config("decompose", kData + "/fig1.graph"));
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["alphas"], Json::array({"1/2", "1"}));
  EXPECT_EQ(j["pairs"][0]["B"], Json::array({"v1", "v2"}));
  EXPECT_EQ(j["pairs"][0]["C"], Json::array({"v3", "v4"}));
}

TEST(CliDecompose, PathFromStdin) {
  auto r = invoke(config("decompose", "-"), "v a 1\nv b 2\ne a b\n");
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(Json::parse(r.out)["alphas"], Json::array({"1/2"}));
}

TEST(CliDecompose, TextOutput) {
  auto r = invoke(config("decompose", kData + "/path.graph", false));
  ASSERT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("alpha vector: (1/2)"), std::string::npos) << r.out;
}

TEST(CliDecompose, MalformedInputIsExitTwo) {
  auto r = invoke(config("decompose", kData + "/malformed.graph"));
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("line"), std::string::npos) << r.err;
  EXPECT_EQ(invoke(config("decompose", kData + "/does-not-exist.graph")).code, kInputError);
  EXPECT_EQ(invoke(config("frobnicate", "-")).code, kInputError);
}

TEST(CliAllocate, PathJson) {
  auto r = invoke(config("allocate", kData + "/path.graph"));
  ASSERT_EQ(r.code, kOk) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["prices"], (Json{{"a", "1"}, {"b", "1"}}));
  EXPECT_EQ(j["utilities"], (Json{{"a", "2"}, {"b", "1"}}));
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["allocation"].size(), 2u);
}

TEST(CliAllocate, EdgeAndFig1Levels) {
  auto e = Json::parse(invoke(config("allocate", kData + "/edge.graph")).out);
  EXPECT_EQ(e["levels"]["levels"].size(), 1u);
  auto f = invoke(config("allocate", kData + "/fig1.graph"));
  ASSERT_EQ(f.code, kOk);
  auto j = Json::parse(f.out);
  ASSERT_EQ(j["levels"]["levels"].size(), 3u);
  EXPECT_EQ(j["levels"]["levels"][1]["level"], "1");
  EXPECT_EQ(j["levels"]["levels"][1]["vertices"], Json::array({"v5", "v6"}));
}

TEST(CliAllocate, JsonIsByteStable) {
  auto a = invoke(config("allocate", kData + "/fig1.graph")).out;
  auto b = invoke(config("allocate", kData + "/fig1.graph")).out;
  EXPECT_EQ(a, b);
}

TEST(CliVerify, RoundTripOfMechanismOutputPasses) {
  auto alloc = Json::parse(invoke(config("allocate", kData + "/fig1.graph")).out);
  TempFile f(Json{{"allocation", alloc["allocation"]}, {"prices", alloc["prices"]}}.dump());
  auto cfg = config("verify", kData + "/fig1.graph");
  cfg.allocation_path = f.path();
  auto r = invoke(cfg);
  EXPECT_EQ(r.code, kOk) << r.out << r.err;
  EXPECT_TRUE(Json::parse(r.out)["passed"].get<bool>());
}

TEST(CliVerify, UniformStarWithoutPrices) {
  TempFile f(R"([
    {"from": "c", "to": "l1", "fraction": "1/3"},
    {"from": "c", "to": "l2", "fraction": "1/3"},
    {"from": "c", "to": "l3", "fraction": "1/3"},
    {"from": "l1", "to": "c", "fraction": "1"},
    {"from": "l2", "to": "c", "fraction": "1"},
    {"from": "l3", "to": "c", "fraction": "1"}])");
  auto cfg = config("verify", kData + "/star.graph");
  cfg.allocation_path = f.path();
  auto r = invoke(cfg);
  EXPECT_EQ(r.code, kOk) << r.out << r.err;
  EXPECT_EQ(Json::parse(r.out)["prices"], (Json{{"c", "3"}, {"l1", "1"}, {"l2", "1"}, {"l3", "1"}}));
}

TEST(CliVerify, ViolationIsExitOneWithWitness) {
  TempFile f(R"([{"from": "a", "to": "b", "fraction": "1/2"}, {"from": "b", "to": "a", "fraction": "1"}])");
  auto cfg = config("verify", kData + "/path.graph", false);
  cfg.allocation_path = f.path();
  auto r = invoke(cfg);
  EXPECT_EQ(r.code, kPropertyViolated);
  EXPECT_NE(r.out.find("[violated] market_clearance at a"), std::string::npos) << r.out;
}

TEST(CliVerify, BadAllocationInputIsExitTwo) {
  auto cfg = config("verify", kData + "/star.graph");
  EXPECT_EQ(invoke(cfg).code, kInputError);  // no --allocation
  cfg.allocation_path = kData + "/missing.json";
  EXPECT_EQ(invoke(cfg).code, kInputError);

  TempFile non_edge(R"([{"from": "l1", "to": "l2", "fraction": "1"}])");
  cfg.allocation_path = non_edge.path();
  EXPECT_EQ(invoke(cfg).code, kInputError);

  TempFile not_json("{ nope");
  cfg.allocation_path = not_json.path();
  EXPECT_EQ(invoke(cfg).code, kInputError);

  TempFile bad_fraction(R"([{"from": "c", "to": "l1", "fraction": 0.5}])");
  cfg.allocation_path = bad_fraction.path();
  EXPECT_EQ(invoke(cfg).code, kInputError);
}

TEST(CliOracle, MatchAndLimit) {
  auto r = invoke(config("oracle", kData + "/fig1.graph", false));
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("\nMATCH\n"), std::string::npos);
  auto cfg = config("oracle", kData + "/fig1.graph");
  cfg.oracle_limit = 4;
  EXPECT_EQ(invoke(cfg).code, kInputError);
}

TEST(CliGen, DeterministicWithHeader) {
  RunConfig cfg;
  cfg.command = "gen";
  cfg.n = 6;
  cfg.seed = 99;
  cfg.density = "0.5";
  auto a = invoke(cfg), b = invoke(cfg);
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("# gen n=6 max_weight=9 density=1/2 seed=99\n", 0), 0u) << a.out;
  auto g = parse_graph(a.out);
  EXPECT_EQ(g, random_connected_graph(6, 9, make_rational(1, 2), 99));

  cfg.density = "0";
  EXPECT_EQ(invoke(cfg).code, kInputError);
}

}  // namespace
}  // namespace bdalloc::cli
