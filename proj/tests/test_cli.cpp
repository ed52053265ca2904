#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "klchernoff/cli.hpp"

using namespace klchernoff;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "klchernoff");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Schema of one bound row.
void expect_bound_row(const json& row) {
  ASSERT_TRUE(row.is_object());
  EXPECT_TRUE(row.at("method").is_string());
  const double value = row.at("value").get<double>();
  EXPECT_GE(value, 0.0);
  EXPECT_LE(value, 1.0);
  EXPECT_TRUE(row.at("log_value").is_number());
  EXPECT_TRUE(row.at("lambda_used").is_null() || row.at("lambda_used").is_number());
  EXPECT_TRUE(row.at("meaningful").is_boolean());
  EXPECT_EQ(row.at("reference_only").get<bool>(), row.at("method") == "asymp_gamma");
}

}  // namespace

TEST(Cli, BoundSingleMethodJson) {
  const CliRun r = run({"bound", "--k", "6", "--n", "100", "--t", "12", "--method", "exact"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  ASSERT_EQ(j.at("bounds").size(), 1u);
  expect_bound_row(j.at("bounds")[0]);
  EXPECT_EQ(j.at("bounds")[0].at("method"), "exact");
}

TEST(Cli, BoundTypesValue) {
  const CliRun r = run({"bound", "--k", "2", "--n", "2", "--t", "5", "--method", "types"});
  ASSERT_EQ(r.code, 0);
  const double value = json::parse(r.out).at("bounds")[0].at("value").get<double>();
  EXPECT_NEAR(value / (3 * std::exp(-5.0)), 1.0, 1e-15);
}

TEST(Cli, BoundAllMethodsSchema) {
  const CliRun r = run({"bound", "--k", "6", "--n", "100", "--t", "12"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("bounds").size(), 8u);
  for (const auto& row : j.at("bounds")) expect_bound_row(row);

  const CliRun below = run({"bound", "--k", "6", "--n", "100", "--t", "4"});
  ASSERT_EQ(below.code, 0);
  EXPECT_EQ(json::parse(below.out).at("bounds").size(), 6u);
}

TEST(Cli, BoundPlugInBelowDegreesOfFreedomFails) {
  const CliRun r = run({"bound", "--k", "6", "--n", "100", "--t", "4", "--method", "uncorrected"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("t > k-1"), std::string::npos);
}

TEST(Cli, BoundCsv) {
  const CliRun r = run({"bound", "--k", "3", "--n", "4", "--t", "8", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  EXPECT_EQ(rows[0], "method,value,log_value,lambda_used,meaningful,reference_only");
  EXPECT_EQ(rows.size(), 9u);
}

TEST(Cli, SweepRowCountsAndDeterminism) {
  const CliRun r = run({"sweep", "--k", "6", "--n", "100", "--t-max", "30", "--points", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  EXPECT_EQ(rows[0], "t,method,value,log_value");
  EXPECT_EQ(rows.size(), 1401u);
  EXPECT_EQ(run({"sweep", "--k", "6", "--n", "100", "--t-max", "30", "--points", "200"}).out, r.out);

  const CliRun single = run({"sweep", "--k", "6", "--n", "100", "--t-min", "8", "--t-max", "8", "--points", "1"});
  ASSERT_EQ(single.code, 0);
  EXPECT_EQ(lines(single.out).size(), 8u);
}

TEST(Cli, SweepCrossoverAgainstMardia) {
  const CliRun r = run({"sweep", "--k", "6", "--n", "100", "--t-max", "30", "--points", "200",
                     "--methods", "exact,mardia", "--format", "json"});
  ASSERT_EQ(r.code, 0);
  const json rows = json::parse(r.out);
  ASSERT_EQ(rows.size(), 400u);
  int changes = 0;
  bool first_below = false;
  bool prev = false;
  for (std::size_t i = 0; i < rows.size(); i += 2) {
    EXPECT_EQ(rows[i].at("method"), "exact");
    const bool below = rows[i].at("log_value").get<double>() < rows[i + 1].at("log_value").get<double>();
    if (i == 0) first_below = below;
    else if (below != prev) ++changes;
    prev = below;
  }
  EXPECT_TRUE(first_below);
  EXPECT_FALSE(prev);
  EXPECT_EQ(changes, 1);
}

TEST(Cli, SweepRejectsBadGrids) {
  EXPECT_EQ(run({"sweep", "--k", "6", "--n", "100", "--t-min", "10", "--t-max", "5"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep", "--k", "6", "--n", "100", "--t-max", "30", "--points", "0"}).code, kExitUsage);
  EXPECT_EQ(run({"sweep", "--k", "6", "--n", "100", "--t-max", "30", "--methods", "nope"}).code,
            kExitUsage);
}

TEST(Cli, Critical) {
  const CliRun r = run({"critical", "--k", "2", "--n", "2", "--alpha", "0.5", "--method", "types"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("t").get<double>(), std::log(6.0), 1e-8);
  EXPECT_LE(j.at("round_trip_rel_error").get<double>(), 1e-9);
  EXPECT_EQ(run({"critical", "--k", "2", "--n", "2", "--alpha", "1.5"}).code, kExitUsage);
}

TEST(Cli, CiUnseenButterflies) {
  const CliRun r = run({"ci-unseen", "--data", std::string(KLCHERNOFF_FIXTURES) + "/butterflies.csv",
                     "--alpha", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("k"), 436);
  EXPECT_EQ(j.at("n"), 2029);
  EXPECT_NEAR(j.at("t").get<double>(), 481.20, 0.5);
  EXPECT_NEAR(j.at("unseen_upper").get<double>(), 0.211, 0.001);
}

TEST(Cli, CiUnseenCounts) {
  const CliRun r = run({"ci-unseen", "--counts", "5", "--alpha", "0.05"});
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("k"), 2);
  EXPECT_EQ(j.at("n"), 5);
  EXPECT_NEAR(j.at("unseen_upper").get<double>(), 1 - std::exp(-j.at("t").get<double>() / 5), 1e-9);
}

TEST(Cli, CiUnseenBadData) {
  const std::string path = ::testing::TempDir() + "bad_table.csv";
  std::ofstream(path) << "frequency,species\n1,0\n";
  EXPECT_EQ(run({"ci-unseen", "--data", path}).code, kExitUsage);
  EXPECT_EQ(run({"ci-unseen"}).code, kExitUsage);
  EXPECT_EQ(run({"ci-unseen", "--counts", "1,2", "--data", path}).code, kExitUsage);
}

TEST(Cli, CiCoord) {
  const CliRun r = run({"ci-coord", "--counts", "4,6,0", "--coord", "3", "--t", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("upper").get<double>(), 1 - std::exp(-0.2), 1e-9);
  EXPECT_TRUE(j.at("alpha").is_null());
  EXPECT_EQ(run({"ci-coord", "--counts", "4,6,0", "--coord", "3"}).code, kExitUsage);
  EXPECT_EQ(run({"ci-coord", "--counts", "4,6,0", "--coord", "4", "--t", "1"}).code, kExitUsage);
}

TEST(Cli, VerifyPassesAndNegativeControlFails) {
  const CliRun ok = run({"verify"});
  EXPECT_EQ(ok.code, kExitOk) << ok.out;
  EXPECT_NE(ok.out.find("all properties passed"), std::string::npos);
  EXPECT_EQ(run({"verify", "--max-n", "1"}).code, kExitOk);
  const CliRun bad = run({"verify", "--inject-fault"});
  EXPECT_EQ(bad.code, kExitVerify);
  EXPECT_NE(bad.out.find("FAIL"), std::string::npos);
}

TEST(Cli, McTailSeedFromEnvironment) {
  const std::vector<std::string> args{"mc-tail", "--k", "3", "--n", "10", "--t", "1.5", "--samples", "20000"};
  setenv("KLCHERNOFF_SEED", "5", 1);
  const CliRun a = run(args);
  const CliRun b = run(args);
  setenv("KLCHERNOFF_SEED", "6", 1);
  const CliRun c = run(args);
  unsetenv("KLCHERNOFF_SEED");
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(json::parse(a.out).at("seed"), 5);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--seed", "5", "--threads", "3"});
  EXPECT_EQ(run(threaded).out, a.out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"bound", "--k", "2"}).code, kExitUsage);
  EXPECT_EQ(run({"bound", "--k", "0", "--n", "2", "--t", "1"}).code, kExitUsage);
  EXPECT_EQ(run({"nonsense"}).code, kExitUsage);
  const CliRun help = run({"--help"});
  EXPECT_EQ(help.code, kExitOk);
  EXPECT_NE(help.out.find("nats"), std::string::npos);
}
