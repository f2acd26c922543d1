#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using renewalkit::cli::run_cli;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

json doc_of(const Run& r) {
  json j = json::parse(r.out);
  j.erase("metadata");
  return j;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("renewalkit_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}
}  // namespace

TEST(Cli, RateExample) {
  const auto r = run({"rate", "--x", "exp:1", "--reward", "one", "--t-max", "1e4", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("point").get<double>(), 1.0, 0.05);
  EXPECT_EQ(j.at("experiment"), "rate");
  EXPECT_EQ(j.at("seed"), 7);
  EXPECT_EQ(j.at("algorithm"), "xoshiro256**");
  EXPECT_TRUE(j.contains("stream_derivation"));
  EXPECT_TRUE(j.contains("version"));
  EXPECT_EQ(j.at("config").at("x"), "exp:1");
  EXPECT_EQ(j.at("config").at("t-max"), "1e4");
  EXPECT_TRUE(j.at("metadata").contains("generated_at"));
  EXPECT_FALSE(r.err.empty());  // one-line summary
}

TEST(Cli, ByteIdenticalApartFromMetadata) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"rate", "--x", "unif:0,2", "--reward", "x2", "--t-max", "1000", "--seed", "5"},
        std::vector<std::string>{"ensemble", "--x", "exp:2", "--t", "100", "--reps", "50", "--threads", "4"},
        std::vector<std::string>{"queue", "--arrival", "exp:0.5", "--service", "exp:1", "--cycles", "500"},
        std::vector<std::string>{"counterexample", "--cycles", "2000"}}) {
    const auto a = run(args), b = run(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(doc_of(a).dump(), doc_of(b).dump());
  }
}

TEST(Cli, ThreadCountDoesNotChangeResults) {
  auto a = doc_of(run({"ensemble", "--x", "exp:2", "--t", "100", "--reps", "64", "--threads", "1"}));
  auto b = doc_of(run({"ensemble", "--x", "exp:2", "--t", "100", "--reps", "64", "--threads", "8"}));
  a.erase("config");
  b.erase("config");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Cli, EveryExperimentRuns) {
  const std::vector<std::vector<std::string>> cmds = {
      {"rate", "--reward", "cauchy-triangle", "--mode", "triangle", "--t-max", "100"},
      {"ensemble", "--x", "exp:1", "--reward", "x2", "--t", "100", "--reps", "20"},
      {"ratio", "--x", "exp:1", "--reward", "unif:-1,3", "--cycles", "1000"},
      {"wald", "--x", "det:1", "--t", "10", "--reps", "5"},
      {"as-vs-mean", "--n-max", "100", "--reps", "100"},
      {"replacement", "--life", "unif:0,1", "--T", "0.5", "--c", "1", "--cf", "5", "--t-max", "1000"},
      {"replacement-opt", "--life", "unif:0,1", "--c", "1", "--cf", "5", "--bracket", "0.01,0.99"},
      {"alternating", "--on", "exp:1", "--off", "exp:0.5", "--t-max", "1000"},
      {"age-excess", "--x", "unif:0,1", "--t-max", "1000"},
      {"queue", "--arrival", "det:2", "--service", "det:1", "--cycles", "10"},
      {"counterexample", "--cycles", "1000", "--probes", "0,0.25,0.5"},
  };
  for (const auto& c : cmds) {
    const auto r = run(c);
    EXPECT_EQ(r.code, 0) << c.front() << ": " << r.err;
    EXPECT_EQ(json::parse(r.out).at("experiment"), c.front());
  }
}

TEST(Cli, ExperimentResults) {
  const json w = json::parse(run({"wald", "--x", "det:1", "--t", "10", "--reps", "5"}).out);
  EXPECT_EQ(w.at("mean_cycle_sum"), 11.0);
  const json opt = json::parse(
      run({"replacement-opt", "--life", "unif:0,1", "--c", "1", "--cf", "5", "--bracket", "0.01,0.99"}).out);
  EXPECT_NEAR(opt.at("T_star").get<double>(), 0.5, 1e-4);
  EXPECT_NEAR(opt.at("g_star").get<double>(), 8.0, 1e-3);
  const json cx = json::parse(run({"counterexample", "--cycles", "100000", "--seed", "3"}).out);
  EXPECT_EQ(cx.at("integers_zero"), true);
  EXPECT_EQ(cx.at("ks_pass"), true);
  const json q = json::parse(run({"queue", "--arrival", "det:2", "--service", "det:1", "--cycles", "10"}).out);
  EXPECT_EQ(q.at("L"), 0.5);
}

TEST(Cli, ValidationErrorsExitTwo) {
  const std::vector<std::vector<std::string>> bad = {
      {"rate", "--x", "cauchy:0,1"},
      {"rate", "--x", "exp:-1"},
      {"rate", "--x", "weibull:1"},
      {"rate", "--x", "exp:1", "--mode", "sideways"},
      {"replacement", "--life", "unif:0,1", "--T", "0.5", "--c", "6", "--cf", "5"},
      {"replacement-opt", "--life", "unif:0,1", "--c", "5", "--cf", "5", "--bracket", "0.1,0.9"},
      {"queue", "--arrival", "exp:1", "--service", "exp:1"},
      {"rate", "--x", "exp:1", "--format", "csv"},
      {"rate", "--x", "exp:1", "--bogus", "1"},
      {"nonsense"},
      {},
  };
  for (const auto& b : bad) {
    const auto r = run(b);
    EXPECT_EQ(r.code, 2) << (b.empty() ? "<none>" : b.front()) << " " << r.err;
  }
  const auto r = run({"rate", "--x", "cauchy:0,1"});
  EXPECT_NE(r.err.find("--x"), std::string::npos) << r.err;
}

TEST(Cli, ConfigFileWithFlagOverride) {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  const auto cfg = dir / "exp.ini";
  std::ofstream(cfg) << "seed = 11\n[rate]\nx = \"exp:2\"\nt-max = 500\nreward = \"one\"\n";
  const auto a = run({"--config", cfg.string(), "rate"});
  ASSERT_EQ(a.code, 0) << a.err;
  const json ja = json::parse(a.out);
  EXPECT_EQ(ja.at("seed"), 11);
  EXPECT_EQ(ja.at("config").at("x"), "exp:2");
  EXPECT_EQ(ja.at("config").at("t-max"), "500");

  const auto b = run({"--config", cfg.string(), "--seed", "12", "rate", "--t-max", "600"});
  ASSERT_EQ(b.code, 0) << b.err;
  const json jb = json::parse(b.out);
  EXPECT_EQ(jb.at("seed"), 12);
  EXPECT_EQ(jb.at("config").at("t-max"), "600");
  EXPECT_EQ(jb.at("config").at("x"), "exp:2");
  fs::remove_all(dir);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("RENEWALKIT_SEED", "99", 1);
  const auto a = run({"rate", "--x", "exp:1", "--t-max", "100"});
  const auto b = run({"rate", "--x", "exp:1", "--t-max", "100", "--seed", "3"});
  ::unsetenv("RENEWALKIT_SEED");
  EXPECT_EQ(json::parse(a.out).at("seed"), 99);
  EXPECT_EQ(json::parse(b.out).at("seed"), 3);
}

TEST(Cli, OutDirectoryArtifacts) {
  const auto dir = scratch("out");
  const auto r = run({"--out", dir.string(), "--format", "both", "rate", "--x", "exp:1", "--t-max", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "rate.json"));
  EXPECT_TRUE(fs::exists(dir / "rate_trace.csv"));
  EXPECT_TRUE(fs::exists(dir / "rate_path.csv"));
  std::ifstream trace(dir / "rate_trace.csv");
  std::string header;
  std::getline(trace, header);
  EXPECT_EQ(header, "checkpoint,value");
  EXPECT_FALSE(r.out.empty());

  const auto q = run({"--out", dir.string(), "--format", "csv", "queue", "--arrival", "det:2", "--service",
                      "det:1", "--cycles", "3"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_TRUE(fs::exists(dir / "queue_trace.csv"));
  EXPECT_FALSE(fs::exists(dir / "queue.json"));
  fs::remove_all(dir);
}
