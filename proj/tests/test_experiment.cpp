#include <gtest/gtest.h>

#include <sstream>

#include "locality/experiment.hpp"

using namespace locality;
using nlohmann::json;

namespace {

std::string csv_of(const json& j) {
  std::ostringstream out;
  write_csv(out, run_experiment(parse_experiment_config(j)));
  return out.str();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(Experiment, StarRowHasRatioOne) {
  json cfg = {{"instances", {{{"id", "s9"}, {"family", "star"}, {"n", 9}}}},
              {"algorithms", {{{"name", "mvc"}, {"k", 2}}}},
              {"seeds", {1}}};
  auto report = run_experiment(parse_experiment_config(cfg));
  ASSERT_EQ(report.rows.size(), 1u);
  const auto& r = report.rows[0];
  EXPECT_EQ(r.n, 9u);
  EXPECT_EQ(r.max_degree, 8u);
  EXPECT_EQ(*r.value, 1);
  EXPECT_EQ(*r.oracle_value, 1);
  EXPECT_EQ(*r.ratio, 1);
  EXPECT_TRUE(r.bound_satisfied.value());
  EXPECT_TRUE(report.hard_violations.empty());
}

TEST(Experiment, KmmRatioFive) {
  json cfg = {{"instances", {{{"family", "kmm"}, {"m", 16}}}},
              {"algorithms", {{{"name", "mvc"}, {"k", 2}}}},
              {"seeds", {0}}};
  std::string csv = csv_of(cfg);
  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  auto f = split(line);
  ASSERT_EQ(f.size(), 15u);
  EXPECT_EQ(f[0], "kmm-0");
  EXPECT_EQ(f[7], "20");
  EXPECT_EQ(f[8], "4");
  EXPECT_EQ(f[9], "5");
  EXPECT_EQ(f[10], "5.000000");
  EXPECT_EQ(f[12], "true");
  EXPECT_EQ(f[14], "");
}

TEST(Experiment, EmptySeedsGiveHeaderOnly) {
  json cfg = {{"instances", {{{"family", "path"}, {"n", 5}}}}, {"algorithms", {{{"name", "mvc"}}}}, {"seeds", json::array()}};
  EXPECT_EQ(csv_of(cfg), std::string(csv_header()) + "\n");
  EXPECT_EQ(split(csv_header()).size(), 15u);
}

TEST(Experiment, RejectsBadConfigs) {
  json base = {{"instances", {{{"family", "path"}, {"n", 5}}}}, {"algorithms", {{{"name", "mvc"}}}}, {"seeds", {0}}};
  EXPECT_NO_THROW(parse_experiment_config(base));
  auto bad = base;
  bad["colour"] = 1;
  EXPECT_THROW(parse_experiment_config(bad), ConfigError);
  bad = base;
  bad["instances"][0]["size"] = 3;
  EXPECT_THROW(parse_experiment_config(bad), ConfigError);
  bad = base;
  bad["algorithms"][0]["name"] = "tsp";
  EXPECT_THROW(parse_experiment_config(bad), ConfigError);
  bad = base;
  bad["instances"][0]["family"] = "hypercube";
  EXPECT_THROW(parse_experiment_config(bad), ConfigError);
  bad = base;
  bad["seeds"] = {-1};
  EXPECT_THROW(parse_experiment_config(bad), ConfigError);
  bad = base;
  bad["output"] = {{"json", "x"}};
  EXPECT_THROW(parse_experiment_config(bad), ConfigError);
}

TEST(Experiment, ModuleErrorsLandInErrorColumn) {
  json cfg = {{"instances", {{{"id", "gap"}, {"family", "gnp"}, {"n", 8}, {"p", 0.0}}}},
              {"algorithms", {{{"name", "mcds"}, {"k", 2}}}},
              {"seeds", {0}}};
  auto report = run_experiment(parse_experiment_config(cfg));
  ASSERT_EQ(report.rows.size(), 1u);
  EXPECT_FALSE(report.rows[0].error.empty());
  EXPECT_FALSE(report.aborted);
}

TEST(Experiment, DeterministicAcrossRunsAndThreads) {
  json cfg = {{"instances",
               {{{"family", "gnp"}, {"n", 14}, {"p", 0.25}, {"seed", 3}},
                {{"family", "connected"}, {"n", 12}, {"p", 0.2}, {"seed", 5}},
                {{"family", "cycle"}, {"n", 9}}}},
              {"algorithms",
               {{{"name", "mvc"}, {"k", 3}},
                {{"name", "lp"}, {"ell", 6}, {"p", 0.5}},
                {{"name", "mds"}, {"ell", 6}, {"p", 0.5}},
                {{"name", "mcds"}, {"k", 2}, {"ell", 6}, {"p", 0.5}}}},
              {"seeds", {1, 2}}};
  std::string a = csv_of(cfg);
  std::string b = csv_of(cfg);
  cfg["threads"] = 3;
  std::string c = csv_of(cfg);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  auto report = run_experiment(parse_experiment_config(cfg));
  EXPECT_TRUE(report.hard_violations.empty());
  for (const auto& r : report.rows) {
    if (r.algorithm == "mcds" && r.instance_id == "gnp-0") continue;
    EXPECT_TRUE(r.error.empty()) << r.instance_id << " " << r.algorithm << ": " << r.error;
    ASSERT_TRUE(r.ratio.has_value());
    EXPECT_GE(*r.ratio, 1);
  }
  auto summary = experiment_summary(report);
  EXPECT_EQ(summary["rows"], report.rows.size());
  EXPECT_TRUE(summary["algorithms"].contains("lp"));
}

TEST(Experiment, WallTimeOptIn) {
  json cfg = {{"instances", {{{"family", "path"}, {"n", 6}}}},
              {"algorithms", {{{"name", "mvc"}}}},
              {"seeds", {0}},
              {"record_wall_time", true}};
  auto report = run_experiment(parse_experiment_config(cfg));
  ASSERT_TRUE(report.rows[0].wall_time_ms.has_value());
  EXPECT_GE(*report.rows[0].wall_time_ms, 0.0);
}
