#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "randsudoku/cli.hpp"

namespace randsudoku::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(args, in, out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, HelpAndUsage) {
  EXPECT_EQ(call({"--help"}).code, kOk);
  EXPECT_NE(call({"--help"}).out.find("gen-sudoku"), std::string::npos);
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"frobnicate"}).code, kUsage);
  EXPECT_EQ(call({"gen-perm"}).code, kUsage);
  EXPECT_EQ(call({"gen-perm", "--n", "0"}).code, kUsage);
  EXPECT_EQ(call({"gen-perm", "--n", "3", "--format", "xml"}).code, kUsage);
  EXPECT_EQ(call({"gen-perm", "--n", "3", "--format", "csv"}).code, kUsage);
}

TEST(CliTest, EnumerateCounts) {
  EXPECT_EQ(call({"enumerate", "--n", "2"}).out, "288\n");
  EXPECT_EQ(call({"enumerate", "--n", "1"}).out, "1\n");
  const auto listed = call({"enumerate", "--n", "2", "--list", "--format", "json"});
  const auto j = nlohmann::json::parse(listed.out);
  EXPECT_EQ(j.at("count"), 288);
  EXPECT_EQ(j.at("matrices").size(), 288u);
  EXPECT_EQ(call({"enumerate", "--n", "3"}).code, kInfeasible);
}

TEST(CliTest, SeededRunsAreDeterministic) {
  for (const char* cmd : {"gen-perm", "gen-pi", "gen-sigma", "gen-sudoku"}) {
    const std::vector<std::string> args{cmd, "--n", "3", "--seed", "42"};
    const auto a = call(args);
    const auto b = call(args);
    EXPECT_EQ(a.code, kOk) << cmd << ": " << a.err;
    EXPECT_EQ(a.out, b.out) << cmd;
    EXPECT_NE(a.err.find("seed: 42"), std::string::npos) << cmd;
  }
  const auto unseeded = call({"gen-perm", "--n", "5"});
  EXPECT_NE(unseeded.err.find("seed: "), std::string::npos);
}

TEST(CliTest, CheckExitCodes) {
  EXPECT_EQ(call({"check", "--kind", "perm"}, "3,1,2\n").code, kOk);
  EXPECT_EQ(call({"check", "--kind", "perm"}, "3,1,2\n").out, "valid\n");
  const auto dup = call({"check", "--kind", "perm"}, "1,1,2\n");
  EXPECT_EQ(dup.code, kInvalid);
  EXPECT_EQ(dup.out, "invalid\n");
  EXPECT_EQ(call({"check", "--kind", "perm"}, "1,x\n").code, kUsage);
  EXPECT_EQ(call({"check", "--kind", "perm"}, "1,4,2\n").code, kUsage);
  EXPECT_EQ(call({"check", "--kind", "pi"}, "1,2\n2,1\n2,1\n1,2\n").code, kOk);
  EXPECT_EQ(call({"check", "--kind", "pi"}, "1,1\n2,1\n2,1\n1,2\n").code, kInvalid);
  EXPECT_EQ(call({"check", "--kind", "sigma"}, "1 0 0 0\n0 0 0 1\n0 0 1 0\n0 1 0 0\n").code, kOk);
  EXPECT_EQ(call({"check", "--kind", "sigma"}, "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n").code,
            kInvalid);
  EXPECT_EQ(call({"check", "--kind", "sudoku"}, "1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 2 1\n").code, kOk);
  EXPECT_EQ(call({"check", "--kind", "sudoku"}, "1 2 3 4\n3 4 1 2\n2 1 4 3\n4 3 1 2\n").code,
            kInvalid);
  const auto j = nlohmann::json::parse(
      call({"check", "--kind", "sudoku", "--format", "json"}, R"({"n":1,"cells":[[1]]})").out);
  EXPECT_EQ(j, nlohmann::json::parse(R"({"kind":"sudoku","valid":true})"));
}

TEST(CliTest, InfeasibleAndBudget) {
  EXPECT_EQ(call({"gen-sigma", "--n", "3", "--algorithm", "rejection", "--seed", "1"}).code,
            kInfeasible);
  EXPECT_EQ(call({"gen-sudoku", "--n", "3", "--algorithm", "rejection", "--seed", "1"}).code,
            kInfeasible);
  EXPECT_EQ(call({"gen-perm", "--n", "12", "--algorithm", "rejection", "--max-iterations", "1",
                  "--seed", "3"})
                .code,
            kInfeasible);
  EXPECT_EQ(call({"estimate", "--generator", "sudoku-rejection", "--n", "3", "--samples", "100"})
                .code,
            kInfeasible);
}

TEST(CliTest, PhiPipelineIsByteExact) {
  const auto pi = call({"gen-pi", "--n", "4", "--seed", "7"});
  ASSERT_EQ(pi.code, kOk);
  const auto sigma = call({"map", "--phi"}, pi.out);
  ASSERT_EQ(sigma.code, kOk) << sigma.err;
  const auto back = call({"map", "--phi-inverse"}, sigma.out);
  ASSERT_EQ(back.code, kOk) << back.err;
  EXPECT_EQ(back.out, pi.out);
  EXPECT_EQ(call({"map", "--phi-inverse"}, "1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\n").code, kInvalid);
}

TEST(CliTest, DecomposePipelineIsByteExact) {
  for (const bool pretty : {false, true}) {
    std::vector<std::string> args{"gen-sudoku", "--n", "3", "--seed", "11"};
    if (pretty) args.push_back("--pretty");
    const auto s = call(args);
    ASSERT_EQ(s.code, kOk) << s.err;
    const auto layers = call({"decompose"}, s.out);
    ASSERT_EQ(layers.code, kOk) << layers.err;
    std::vector<std::string> compose{"compose"};
    if (pretty) compose.push_back("--pretty");
    EXPECT_EQ(call(compose, layers.out).out, s.out);
  }
}

TEST(CliTest, ComposeRejectsOverlap) {
  const std::string layer = "1 0 0 0\n0 0 1 0\n0 1 0 0\n0 0 0 1\n";
  EXPECT_EQ(call({"compose"}, layer + "\n" + layer + "\n" + layer + "\n" + layer).code, kInvalid);
}

TEST(CliTest, JsonOutputsParse) {
  const auto perm = nlohmann::json::parse(
      call({"gen-perm", "--n", "6", "--seed", "1", "--format", "json"}).out);
  EXPECT_EQ(perm.at("n"), 6);
  EXPECT_EQ(perm.at("values").size(), 6u);

  const auto sigma = nlohmann::json::parse(
      call({"gen-sigma", "--n", "3", "--seed", "1", "--format", "json"}).out);
  EXPECT_EQ(sigma.at("ones").size(), 9u);

  const auto s = call({"gen-sudoku", "--n", "2", "--seed", "1", "--format", "json", "--stats"});
  const auto sj = nlohmann::json::parse(s.out);
  EXPECT_EQ(sj.at("cells").size(), 4u);
  const auto stats_line = s.err.substr(s.err.find('{'));
  EXPECT_EQ(nlohmann::json::parse(stats_line).at("schema_version"), 1);

  // JSON output feeds back in as input.
  EXPECT_EQ(call({"check", "--kind", "sudoku"}, s.out).code, kOk);
  const auto layers = call({"decompose", "--format", "json"}, s.out);
  EXPECT_EQ(nlohmann::json::parse(layers.out).at("layers").size(), 4u);
  EXPECT_EQ(nlohmann::json::parse(call({"compose", "--format", "json"}, layers.out).out), sj);
}

TEST(CliTest, EstimateAndBench) {
  const auto e = call({"estimate", "--generator", "perm-rejection", "--n", "3", "--samples",
                       "20000", "--seed", "5", "--format", "json"});
  ASSERT_EQ(e.code, kOk) << e.err;
  const auto j = nlohmann::json::parse(e.out);
  EXPECT_EQ(j.at("theoretical_acceptance"), "2/9");
  EXPECT_LE(j.at("z_score").get<double>(), 3.0);

  const auto sharded = call({"estimate", "--generator", "pi-direct", "--n", "3", "--samples",
                             "1000", "--workers", "4", "--format", "csv"});
  EXPECT_EQ(sharded.code, kOk) << sharded.err;
  EXPECT_EQ(call({"estimate", "--generator", "perm-rejection", "--n", "3", "--samples", "50"}).code,
            kUsage);
  EXPECT_EQ(call({"estimate", "--generator", "nope", "--n", "3"}).code, kUsage);

  const auto b = call({"bench", "--generator", "perm-check", "--n-values", "16,32", "--format",
                       "json", "--seed", "2"});
  ASSERT_EQ(b.code, kOk) << b.err;
  EXPECT_EQ(nlohmann::json::parse(b.out).at("rows").size(), 2u);
  EXPECT_EQ(call({"bench", "--generator", "perm-check", "--n-values", "16"}).code, kUsage);
}

}  // namespace
}  // namespace randsudoku::cli
