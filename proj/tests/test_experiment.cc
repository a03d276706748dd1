// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "psm/experiment.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gtest/gtest.h"

namespace psm {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

json TinyCardinalityConfig() {
  return json{
      {"experiment", "cardinality-sweep"},
      {"sweep", {2, 3}},
      {"repetitions", 3},
      {"seed", 4242},
      {"sample_m", 12},
      {"threads", 2},
      {"dataset",
       {{"kind", "synthetic"},
        {"bbox", {40.70, -74.02, 40.80, -73.93}},
        {"m", 200},
        {"seed", 7}}},
      {"locations",
       {{"kind", "grid"},
        {"bbox", {40.70, -74.02, 40.80, -73.93}},
        {"rows", 3},
        {"cols", 3},
        {"corner_copies", 2}}},
      {"algorithms",
       {{{"name", "pcg"},
         {"eta", 0.5},
         {"epsilon", 0.5},
         {"delta", 0.01},
         {"samples", 60}},
        {{"name", "dpg"}, {"composition", "basic"}, {"epsilon", 0.5}, {"delta", 0.01}},
        {{"name", "greedy"}},
        {{"name", "random"}}}},
  };
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Minimal XML well-formedness check: every opened tag closes in order.
bool WellFormedXml(const std::string& text) {
  std::vector<std::string> stack;
  size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    const size_t end = text.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag.front() == '?' || tag.front() == '!') continue;  // declarations
    if (tag.back() == '/') continue;                         // self-closing
    if (tag.front() == '/') {
      if (stack.empty()) return false;
      if (stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const size_t space = tag.find_first_of(" \t\n");
    stack.push_back(space == std::string::npos ? tag : tag.substr(0, space));
  }
  return stack.empty();
}

TEST(Config, RejectsZeroRepetitions) {
  json doc = TinyCardinalityConfig();
  doc["repetitions"] = 0;
  EXPECT_THROW(ExperimentConfig::FromJson(doc), std::invalid_argument);
}

TEST(Config, RejectsEmptySweepAndUnknownNames) {
  json doc = TinyCardinalityConfig();
  doc["sweep"] = json::array();
  EXPECT_THROW(ExperimentConfig::FromJson(doc), std::invalid_argument);

  doc = TinyCardinalityConfig();
  doc["algorithms"][0]["name"] = "pcg";
  doc["algorithms"][0]["epsilon"] = 0.0;
  EXPECT_THROW(ExperimentConfig::FromJson(doc), std::invalid_argument);

  doc = TinyCardinalityConfig();
  doc["experiment"] = "bogus";
  EXPECT_THROW(ExperimentConfig::FromJson(doc), std::invalid_argument);
}

TEST(Config, MissingPathsDetectedAtLoad) {
  json doc = TinyCardinalityConfig();
  doc["dataset"] = {{"kind", "file"}, {"path", "/nonexistent/pickups.csv"}};
  EXPECT_THROW(ExperimentConfig::FromJson(doc), std::invalid_argument);
}

TEST(RunExperiment, StatisticsMatchIndependentRecomputation) {
  ExperimentConfig cfg = ExperimentConfig::FromJson(TinyCardinalityConfig());
  ExperimentOutcome outcome = RunExperiment(cfg);
  EXPECT_FALSE(outcome.error.has_value());
  EXPECT_EQ(outcome.completed_runs, outcome.total_runs);
  ASSERT_EQ(outcome.rows.size(), 8u);  // 4 algorithms × 2 sweep values
  for (const auto& row : outcome.rows) {
    EXPECT_EQ(row.utilities.size(), 3u);
    double mean = 0;
    for (double v : row.utilities) mean += v;
    mean /= row.utilities.size();
    double ss = 0;
    for (double v : row.utilities) ss += (v - mean) * (v - mean);
    const double stddev = std::sqrt(ss / (row.utilities.size() - 1));
    EXPECT_NEAR(row.mean, mean, 1e-9);
    EXPECT_NEAR(row.stddev, stddev, 1e-9);
    EXPECT_NEAR(row.stderr_, stddev / std::sqrt(3.0), 1e-9);
  }
}

TEST(RunExperiment, ByteIdenticalAcrossThreadCounts) {
  json doc = TinyCardinalityConfig();
  ExperimentConfig cfg1 = ExperimentConfig::FromJson(doc);
  doc["threads"] = 1;
  ExperimentConfig cfg2 = ExperimentConfig::FromJson(doc);

  const std::string dir1 = testing::TempDir() + "/exp_t2";
  const std::string dir2 = testing::TempDir() + "/exp_t1";
  EmitReport(cfg1, RunExperiment(cfg1), dir1);
  EmitReport(cfg2, RunExperiment(cfg2), dir2);
  EXPECT_EQ(ReadFile(fs::path(dir1) / "summary.csv"),
            ReadFile(fs::path(dir2) / "summary.csv"));
  EXPECT_EQ(ReadFile(fs::path(dir1) / "raw.jsonl"),
            ReadFile(fs::path(dir2) / "raw.jsonl"));
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST(EmitReport, CsvMeansRoundTripAtNineDecimals) {
  ExperimentConfig cfg = ExperimentConfig::FromJson(TinyCardinalityConfig());
  ExperimentOutcome outcome = RunExperiment(cfg);
  const std::string dir = testing::TempDir() + "/exp_csv";
  EmitReport(cfg, outcome, dir);
  std::ifstream csv(fs::path(dir) / "summary.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "algorithm,sweep,mean,std,stderr");
  size_t row_idx = 0;
  while (std::getline(csv, line)) {
    ASSERT_LT(row_idx, outcome.rows.size());
    const size_t c1 = line.find(','), c2 = line.find(',', c1 + 1),
                 c3 = line.find(',', c2 + 1);
    const std::string mean_field = line.substr(c2 + 1, c3 - c2 - 1);
    char expected[64];
    std::snprintf(expected, sizeof(expected), "%.9f",
                  outcome.rows[row_idx].mean);
    EXPECT_EQ(mean_field, expected);
    // Re-parsing gives back exactly the formatted value.
    char reformatted[64];
    std::snprintf(reformatted, sizeof(reformatted), "%.9f",
                  std::stod(mean_field));
    EXPECT_EQ(mean_field, reformatted);
    ++row_idx;
  }
  EXPECT_EQ(row_idx, outcome.rows.size());
  fs::remove_all(dir);
}

TEST(EmitReport, SvgIsWellFormedXml) {
  ExperimentConfig cfg = ExperimentConfig::FromJson(TinyCardinalityConfig());
  ExperimentOutcome outcome = RunExperiment(cfg);
  const std::string dir = testing::TempDir() + "/exp_svg";
  EmitReport(cfg, outcome, dir);
  const std::string svg = ReadFile(fs::path(dir) / "chart.svg");
  EXPECT_FALSE(svg.empty());
  EXPECT_TRUE(WellFormedXml(svg));
  fs::remove_all(dir);
}

TEST(EmitReport, RawUtilitiesReproduceRowStats) {
  ExperimentConfig cfg = ExperimentConfig::FromJson(TinyCardinalityConfig());
  ExperimentOutcome outcome = RunExperiment(cfg);
  const std::string dir = testing::TempDir() + "/exp_raw";
  EmitReport(cfg, outcome, dir);
  std::ifstream raw(fs::path(dir) / "raw.jsonl");
  std::map<std::pair<std::string, int64_t>, std::vector<double>> collected;
  std::string line;
  while (std::getline(raw, line)) {
    json rec = json::parse(line);
    collected[{rec.at("algorithm").get<std::string>(),
               rec.at("sweep").get<int64_t>()}]
        .push_back(rec.at("utility").get<double>());
  }
  for (const auto& row : outcome.rows) {
    const auto& utilities = collected.at({row.algorithm, row.sweep_value});
    ResultRow recomputed;
    recomputed.utilities = utilities;
    ComputeStats(recomputed);
    EXPECT_NEAR(recomputed.mean, row.mean, 1e-9);
    EXPECT_NEAR(recomputed.stddev, row.stddev, 1e-9);
  }
  fs::remove_all(dir);
}

TEST(RunExperiment, PartitionSweepNormalizedToUnitRange) {
  json doc{
      {"experiment", "partition-sweep"},
      {"sweep", {200, 400}},
      {"repetitions", 2},
      {"seed", 99},
      {"hard_instance", {{"mode", "table"}, {"eps", 0.2}}},
      {"algorithms",
       {{{"name", "pcg"},
         {"eta", 0.5},
         {"epsilon", 0.1},
         {"delta_m_power", 1.5},
         {"samples", 100}},
        {{"name", "dpg"},
         {"composition", "rank-invariant"},
         {"epsilon", 0.1},
         {"delta_m_power", 1.5}}}},
  };
  ExperimentConfig cfg = ExperimentConfig::FromJson(doc);
  ExperimentOutcome outcome = RunExperiment(cfg);
  EXPECT_FALSE(outcome.error.has_value());
  for (const auto& row : outcome.rows) {
    for (double v : row.utilities) {
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0 + 1e-9);
    }
  }
}

TEST(RunExperiment, SingleRunEmitsTraces) {
  json doc{
      {"experiment", "single-run"},
      {"repetitions", 1},
      {"seed", 5},
      {"sample_m", 10},
      {"write_traces", true},
      {"dataset",
       {{"kind", "synthetic"},
        {"bbox", {40.70, -74.02, 40.80, -73.93}},
        {"m", 50},
        {"seed", 3}}},
      {"locations",
       {{"kind", "grid"},
        {"bbox", {40.70, -74.02, 40.80, -73.93}},
        {"rows", 2},
        {"cols", 3},
        {"corner_copies", 0}}},
      {"matroid", {{"kind", "cardinality"}, {"r", 2}}},
      {"algorithms",
       {{{"name", "pcg"},
         {"eta", 0.5},
         {"epsilon", 0.5},
         {"delta", 0.01},
         {"samples", 50}}}},
  };
  ExperimentConfig cfg = ExperimentConfig::FromJson(doc);
  ExperimentOutcome outcome = RunExperiment(cfg);
  EXPECT_FALSE(outcome.error.has_value());
  ASSERT_EQ(outcome.traces.size(), 1u);
  EXPECT_TRUE(outcome.traces[0].contains("rounds"));
  EXPECT_TRUE(outcome.traces[0].contains("epsilon0"));
}

TEST(ParseInstance, CoverageAndHardPartition) {
  json doc{{"objective",
            {{"kind", "coverage"},
             {"universe", 3},
             {"agents", {{{0}, {0, 1}, {2}}}}}},
           {"matroid", {{"kind", "cardinality"}, {"r", 2}}}};
  ParsedInstance inst = ParseInstanceJson(doc);
  EXPECT_EQ(inst.objective.ground_size(), 3);
  BruteForceResult best = BruteForceOpt(inst.objective, *inst.matroid);
  EXPECT_EQ(best.set, (std::vector<int>{1, 2}));

  json hard{{"objective",
             {{"kind", "hard-partition"}, {"eps", 0.2}, {"m", 10}}}};
  ParsedInstance trap = ParseInstanceJson(hard);
  EXPECT_EQ(BruteForceOpt(trap.objective, *trap.matroid).set,
            (std::vector<int>{0, 2}));
}

}  // namespace
}  // namespace psm
