#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "gqe/grid.hpp"

using Json = nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = gqe::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(GQE_TEST_TMPDIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_timestamp(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\"") == std::string::npos) out += line + "\n";
  }
  return out;
}

}  // namespace

TEST(Cli, GaussianExamplePasses) {
  const CliRun r = run({"example", "1", "--n", "3", "--c", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["overall_pass"].get<bool>());
  EXPECT_LE(j["values"]["max_residual"].get<double>(), 1e-8);
  for (const auto& c : j["checks"]) {
    for (const char* key : {"name", "max_gap", "mean_gap", "tol", "pass", "points_evaluated",
                            "points_skipped"}) {
      EXPECT_TRUE(c.contains(key)) << key;
    }
  }
  EXPECT_TRUE(j.contains("config_hash"));
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), gqe::kDefaultSeed);
}

TEST(Cli, LambdaOffsetFailsAtMetricScale) {
  const CliRun r = run({"example", "1", "--n", "3", "--c", "1", "--lambda-offset", "1.0"});
  ASSERT_EQ(r.code, 1) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["overall_pass"].get<bool>());
  // The offset adds g = e^{r²}δ; the largest evaluated r has e^{-r²/2} ≥ 1e-6.
  double expected = 0.0;
  for (const auto& p : gqe::radial_grid(3)) {
    if (std::exp(-p.t * p.t / 2) >= 1e-6) expected = std::max(expected, std::exp(p.t * p.t));
  }
  EXPECT_NEAR(j["values"]["max_residual"].get<double>(), expected, 1e-6 * expected);
}

TEST(Cli, ParseCheck) {
  const CliRun bad = run({"parse-check", "exp(-r^2/"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("position 9"), std::string::npos);
  EXPECT_NE(bad.err.find("          ^"), std::string::npos);
  const CliRun good = run({"parse-check", "exp(-r^2/2)"});
  EXPECT_EQ(good.code, 0);
  EXPECT_EQ(good.out, "exp(-r^2/2)\n");
  EXPECT_EQ(run({"parse-check", "exp(-u)", "--var", "u"}).code, 0);
  EXPECT_EQ(run({"parse-check", "exp(-u)"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"example", "4"}).code, 2);
  EXPECT_EQ(run({"example", "1", "--n", "2"}).code, 2);
  EXPECT_EQ(run({"example", "1", "--bogus"}).code, 2);
  EXPECT_EQ(run({"verify", "--phi", "exp(-r", "--f", "r"}).code, 2);
  EXPECT_EQ(run({"example", "1", "--config", tmp("missing.ini")}).code, 2);
  EXPECT_EQ(run({"example", "1", "-o", "/nonexistent-dir/report.json"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ConfigFileWithOverrides) {
  const std::string cfg = tmp("cli_test.ini");
  {
    std::ofstream f(cfg);
    f << "[example]\nn = 4\nc = 2\n";
  }
  const Json a = Json::parse(run({"example", "1", "--config", cfg}).out);
  EXPECT_EQ(a["config"]["n"], "4");
  EXPECT_EQ(a["config"]["c"], "2");
  const Json b = Json::parse(run({"example", "1", "--config", cfg, "--n", "5"}).out);
  EXPECT_EQ(b["config"]["n"], "5");
  EXPECT_EQ(b["config"]["c"], "2");
  EXPECT_NE(a["config_hash"], b["config_hash"]);
  const Json c = Json::parse(run({"example", "1", "--n", "4", "--c", "2"}).out);
  EXPECT_EQ(a["config_hash"], c["config_hash"]);
}

TEST(Cli, ReportsAreDeterministic) {
  const std::string p1 = tmp("det1.json"), p2 = tmp("det2.json");
  ASSERT_EQ(run({"invariants", "--threads", "1", "-o", p1}).code, 0);
  ASSERT_EQ(run({"invariants", "--threads", "4", "-o", p2}).code, 0);
  const std::string a = slurp(p1), b = slurp(p2);
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(without_timestamp(a), without_timestamp(b));
}

TEST(Cli, CsvPlotData) {
  const std::string csv = tmp("plot.csv");
  ASSERT_EQ(run({"example", "3", "--count", "10", "--directions", "2", "--csv", csv}).code, 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "u,nu,lambda,S,residual");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, 20);
}

TEST(Cli, OtherSubcommandsPass) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"example", "2", "--n", "4", "--c", "2"},
        {"example", "3", "--n", "5", "--alpha", "1,0.5,0,0,-1"},
        {"verify", "--phi", "1/(1+r^2)", "--f", "r + r^3", "--transform"},
        {"verify", "--family", "translation", "--phi", "2 + tanh(u)", "--f", "u", "--n", "4"},
        {"curvature", "--metric", "half-space"},
        {"curvature", "--phi", "1/(1+r)"},
        {"sphere-witness", "--v", "1", "--tol-residual", "1e-6"},
        {"karp", "--structure", "ball"},
        {"complete-check"},
        {"models", "--n", "5"}}) {
    const CliRun r = run(args);
    EXPECT_EQ(r.code, 0) << args[0] << ": " << r.err;
  }
}

TEST(Cli, KarpChartExhaustionFails) {
  const CliRun r = run({"karp", "--structure", "sphere", "--radii", "0.5,2"});
  EXPECT_EQ(r.code, 1);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["values"]["karp[r_g=2]"], "nan");
}

TEST(Cli, Fnv1a) {
  EXPECT_EQ(gqe::cli::fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(gqe::cli::fnv1a64("a"), 0xaf63dc4c8601ec8cull);
}
