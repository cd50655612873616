#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bicons_cli/commands.hpp"
#include "bicons_cli/config.hpp"

using namespace bicons::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "bicons");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return (std::filesystem::path(BICONS_TEST_TMPDIR) / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  RunConfig c;
  c.eps = -1;
  c.C = 2.5;
  c.xi00 = 0.75;
  c.window = std::array<double, 4>{-1.0, 2.0, 0.0, 3.0};
  c.grid = {17, 9};
  c.tol["codazzi"] = 1e-6;
  c.out = "x.obj";
  c.format = "obj";
  c.workers = 3;
  c.geodesics = 5;
  c.seed = 42;
  EXPECT_EQ(RunConfig::from_json(c.to_json()), c);
  EXPECT_EQ(RunConfig::from_json(RunConfig{}.to_json(-1)), RunConfig{});
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(RunConfig::from_json("{\"epsilon\": 1}"), ConfigError);
  EXPECT_THROW(RunConfig::from_json("{\"eps\": \"one\"}"), ConfigError);
  EXPECT_THROW(RunConfig::from_json("[1, 2]"), ConfigError);
  EXPECT_THROW(RunConfig::from_json("{"), ConfigError);
  RunConfig c;
  c.grid = {1, 5};
  EXPECT_THROW(c.validate(), ConfigError);
  c = RunConfig{};
  c.tol["x"] = -1.0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = RunConfig{};
  c.window = std::array<double, 4>{1.0, 0.0, 0.0, 1.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = RunConfig{};
  c.format = "stl";
  EXPECT_THROW(c.validate(), ConfigError);
  EXPECT_NO_THROW(RunConfig{}.validate());
}

TEST(Cli, RootsPrintsTableAndJson) {
  const Result r = invoke({"roots", "--eps", "0", "--C", "4"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.out.find("xi02"), std::string::npos);
  EXPECT_NE(r.out.find("\"xi02\": 7.99999999999999"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"roots", "--eps", "1", "--C", "1"}).code, kInvalidParameters);
  EXPECT_EQ(invoke({"roots", "--eps", "2"}).code, kInvalidParameters);
  EXPECT_EQ(invoke({"roots", "--bogus"}).code, kInvalidParameters);
  EXPECT_EQ(invoke({}).code, kInvalidParameters);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
  EXPECT_EQ(invoke({"verify", "--tol.codazzi", "nope"}).code, kInvalidParameters);
  EXPECT_EQ(invoke({"mesh", "--grid", "11", "8"}).code, kInvalidParameters);
  EXPECT_EQ(invoke({"roots", "--config", tmp("does-not-exist.json")}).code, kInvalidParameters);
  EXPECT_EQ(invoke({"mesh", "--grid", "11", "8", "--out", "/nonexistent-dir/m.obj"}).code, kNumericalFailure);
}

TEST(Cli, VerifyPassesAndNamesFailures) {
  const Result ok = invoke({"verify", "--eps", "0", "--C", "1", "--geodesics", "2"});
  EXPECT_EQ(ok.code, kOk) << ok.err;
  EXPECT_NE(ok.out.find("\"passed\": true"), std::string::npos);
  EXPECT_NE(ok.out.find("curvature_ode"), std::string::npos);
  EXPECT_NE(ok.out.find("geodesic_speed_drift"), std::string::npos);

  const Result bad = invoke({"verify", "--eps", "0", "--C", "1", "--geodesics", "0", "--tol.laplace_identity=1e-300"});
  EXPECT_EQ(bad.code, kVerificationFailed);
  EXPECT_NE(bad.err.find("FAIL laplace_identity"), std::string::npos);
}

TEST(Cli, VerifyIsDeterministic) {
  const std::vector<std::string> args = {"verify", "--eps", "1", "--C", "3", "--geodesics", "2", "--seed", "7"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Cli, ApplyThresholdKeepsExtraFailures) {
  bicons::ResidualReport r;
  r.samples = 3;
  r.max_residual = 1e-9;
  r.threshold = 1e-8;
  r.passed = false;  // failed through an asserted extra
  apply_threshold(r, 1e-6);
  EXPECT_FALSE(r.passed);
  r.passed = true;
  apply_threshold(r, 1e-10);
  EXPECT_FALSE(r.passed);
  r.passed = false;  // failed through the residual itself
  r.max_residual = 1e-7;
  r.threshold = 1e-8;
  apply_threshold(r, 1e-6);
  EXPECT_TRUE(r.passed);
}

TEST(Cli, GlueWritesCsvAndJunctionReport) {
  const std::string path = tmp("glue.csv");
  const Result r = invoke({"glue", "--eps", "1", "--C", "3", "--grid", "50", "--out", path});
  EXPECT_EQ(r.code, kOk);
  const std::string csv = slurp(path);
  EXPECT_EQ(csv.rfind("rho,F,Gamma,K,f\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 51);
  EXPECT_NE(r.out.find("\"junctions\""), std::string::npos);
  const Result p = invoke({"profile", "--eps", "-1", "--C", "0", "--grid", "10"});
  EXPECT_EQ(p.code, kOk);
  EXPECT_EQ(std::count(p.out.begin(), p.out.end(), '\n'), 11);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const std::string cfg = tmp("run.json");
  {
    std::ofstream f(cfg);
    f << R"({"eps": 0, "C": 9, "format": "json"})";
  }
  const Result a = invoke({"roots", "--config", cfg});
  EXPECT_NE(a.out.find("\"C\": 9.0"), std::string::npos) << a.out;
  EXPECT_EQ(a.out.find("xi_star  "), std::string::npos);
  const Result b = invoke({"roots", "--config", cfg, "--C", "1"});
  EXPECT_NE(b.out.find("\"C\": 1.0"), std::string::npos) << b.out;
  EXPECT_NE(b.out.find("\"eps\": 0"), std::string::npos) << b.out;
}

TEST(Cli, ImmerseFlatIncludesOracle) {
  const Result r = invoke({"immerse", "--eps", "0", "--C", "1", "--grid", "81", "32"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("oracle_alignment"), std::string::npos);
  EXPECT_NE(r.out.find("extrinsic_mean_curvature"), std::string::npos);
}

TEST(Cli, MeshWritesObjAndCsv) {
  const std::string obj = tmp("mesh.obj");
  const Result r = invoke({"mesh", "--eps", "-1", "--C", "0", "--grid", "81", "32", "--out", obj});
  EXPECT_EQ(r.code, kOk) << r.err;
  const std::string text = slurp(obj);
  std::size_t v = 0, f = 0;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    if (line.rfind("v ", 0) == 0) ++v;
    if (line.rfind("f ", 0) == 0) ++f;
  }
  EXPECT_EQ(v, 81u * 32u);
  EXPECT_EQ(f, 2u * 80u * 31u);
  const std::string csv = tmp("mesh.csv");
  EXPECT_EQ(invoke({"mesh", "--eps", "1", "--C", "3", "--grid", "201", "64", "--format", "csv", "--out", csv}).code, kOk);
  EXPECT_EQ(slurp(csv).rfind("rho,theta,x1,x2,x3,x4,drift\n", 0), 0u);
}

TEST(Cli, CoarseGridFailsTheDifferenceCheck) {
  const Result r = invoke({"immerse", "--eps", "-1", "--C", "0", "--grid", "21", "12"});
  EXPECT_EQ(r.code, kVerificationFailed);
}

TEST(Cli, WindowFlag) {
  const Result r = invoke({"glue", "--eps", "0", "--C", "1", "--window", "-6", "-2", "--grid", "5"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.rfind("rho,F,Gamma,K,f\n-6,", 0), 0u);
  EXPECT_EQ(invoke({"glue", "--window", "1", "2", "3"}).code, kInvalidParameters);
}
