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

#ifndef PSM_EXPERIMENT_H_
#define PSM_EXPERIMENT_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "psm/algorithms.h"
#include "psm/dataset.h"
#include "psm/instances.h"

namespace psm {

enum class ExperimentKind { kCardinalitySweep, kPartitionSweep, kSingleRun };

struct AlgorithmSpec {
  std::string name;   // pcg | pmcg | cg | greedy | dpg | random
  std::string label;  // row tag; defaults to name (+ composition for dpg)
  double eta = 0.2;
  double gamma = 0.1;
  double epsilon = 0;
  double delta = 0;
  // δ = m^{-power} per run, where m is the run's agent count. Overrides
  // `delta` when set.
  std::optional<double> delta_m_power;
  std::optional<int64_t> samples;
  DpgMode dpg_mode = DpgMode::kBasic;
  bool nonprivate = false;

  bool is_private() const;
};

struct DatasetSpec {
  enum class Kind { kFile, kSynthetic, kSyntheticMixture } kind = Kind::kSynthetic;
  std::string path;
  BoundingBox bbox;
  int m = 0;
  uint64_t seed = 0;
  // Mixture components: uniform boxes concatenated into one pool.
  std::vector<DatasetSpec> components;

  int total_m() const;
};

struct LocationsSpec {
  enum class Kind { kGrid, kCsv, kInline } kind = Kind::kGrid;
  BoundingBox bbox;
  int rows = 1, cols = 1, corner_copies = 0;
  std::string path;
  std::vector<Point> points;
};

struct HardInstanceSpec {
  HardInstanceMode mode = HardInstanceMode::kTable;
  double eps = 0.2;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSingleRun;
  std::vector<int64_t> sweep;
  int repetitions = 1;
  uint64_t seed = 1;
  int sample_m = 0;  // pickups drawn per run; 0 = use the whole dataset
  int threads = 0;   // 0 = hardware concurrency
  DatasetSpec dataset;
  LocationsSpec locations;
  std::optional<nlohmann::json> matroid;
  HardInstanceSpec hard_instance;
  std::vector<AlgorithmSpec> algorithms;
  bool emit_svg = true;
  bool write_traces = false;
  nlohmann::json reference;  // opaque metadata echoed into the manifest
  nlohmann::json raw;        // original config document

  static ExperimentConfig FromJson(const nlohmann::json& doc);
  void Validate() const;
};

struct ResultRow {
  std::string algorithm;
  int64_t sweep_value = 0;
  std::vector<double> utilities;  // per repetition
  double mean = 0;
  double stddev = 0;  // sample standard deviation
  double stderr_ = 0;
};

struct ExperimentOutcome {
  std::vector<ResultRow> rows;
  std::optional<std::string> error;  // first failure, if any
  int completed_runs = 0;
  int total_runs = 0;
  // Trace JSON (summary + rounds) per completed run, when write_traces.
  std::vector<nlohmann::json> traces;
};

// Executes sweep × repetition × algorithm runs with independent derived
// sub-seeds. Tasks may run concurrently; results are aggregated in a fixed
// order so output is identical for any thread count. A failing run stops
// the schedule and surfaces in `error` with completed rows intact.
ExperimentOutcome RunExperiment(const ExperimentConfig& cfg);

// Writes summary.csv, raw.jsonl, manifest.json, optional chart.svg and
// trace files under out_dir.
void EmitReport(const ExperimentConfig& cfg, const ExperimentOutcome& outcome,
                const std::string& out_dir);

// Recomputes (mean, sample stddev, stderr) from raw utilities.
void ComputeStats(ResultRow& row);

// One-instance description used by the `opt` subcommand:
//   {"objective": {...}, "matroid": {...}}
struct ParsedInstance {
  DecomposableObjective objective;
  std::shared_ptr<Matroid> matroid;
};
ParsedInstance ParseInstanceJson(const nlohmann::json& doc);

}  // namespace psm

#endif  // PSM_EXPERIMENT_H_
