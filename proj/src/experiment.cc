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

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace psm {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

BoundingBox BboxFromJson(const json& arr) {
  if (!arr.is_array() || arr.size() != 4) {
    throw std::invalid_argument("bbox must be [lat_min, lon_min, lat_max, lon_max]");
  }
  BoundingBox box{arr[0].get<double>(), arr[1].get<double>(),
                  arr[2].get<double>(), arr[3].get<double>()};
  if (box.degenerate()) throw std::invalid_argument("degenerate bbox");
  return box;
}

DatasetSpec DatasetFromJson(const json& j) {
  DatasetSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "file") {
    spec.kind = DatasetSpec::Kind::kFile;
    spec.path = j.at("path").get<std::string>();
  } else if (kind == "synthetic") {
    spec.kind = DatasetSpec::Kind::kSynthetic;
    spec.bbox = BboxFromJson(j.at("bbox"));
    spec.m = j.at("m").get<int>();
    spec.seed = j.value("seed", uint64_t{1});
  } else if (kind == "synthetic-mixture") {
    spec.kind = DatasetSpec::Kind::kSyntheticMixture;
    for (const auto& comp : j.at("components")) {
      DatasetSpec inner;
      inner.kind = DatasetSpec::Kind::kSynthetic;
      inner.bbox = BboxFromJson(comp.at("bbox"));
      inner.m = comp.at("m").get<int>();
      inner.seed = comp.value("seed", uint64_t{1});
      spec.components.push_back(std::move(inner));
    }
    if (spec.components.empty()) {
      throw std::invalid_argument("mixture needs at least one component");
    }
  } else {
    throw std::invalid_argument("unknown dataset kind: " + kind);
  }
  return spec;
}

LocationsSpec LocationsFromJson(const json& j) {
  LocationsSpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "grid") {
    spec.kind = LocationsSpec::Kind::kGrid;
    spec.bbox = BboxFromJson(j.at("bbox"));
    spec.rows = j.at("rows").get<int>();
    spec.cols = j.at("cols").get<int>();
    spec.corner_copies = j.value("corner_copies", 0);
  } else if (kind == "csv") {
    spec.kind = LocationsSpec::Kind::kCsv;
    spec.path = j.at("path").get<std::string>();
  } else if (kind == "inline") {
    spec.kind = LocationsSpec::Kind::kInline;
    for (const auto& pair : j.at("points")) {
      spec.points.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    }
  } else {
    throw std::invalid_argument("unknown locations kind: " + kind);
  }
  return spec;
}

AlgorithmSpec AlgorithmFromJson(const json& j) {
  AlgorithmSpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.eta = j.value("eta", 0.2);
  spec.gamma = j.value("gamma", 0.1);
  spec.epsilon = j.value("epsilon", 0.0);
  spec.delta = j.value("delta", 0.0);
  if (j.contains("delta_m_power")) {
    spec.delta_m_power = j.at("delta_m_power").get<double>();
  }
  if (j.contains("samples")) spec.samples = j.at("samples").get<int64_t>();
  spec.nonprivate = j.value("nonprivate", false);
  if (spec.name == "dpg") {
    const std::string mode = j.value("composition", "basic");
    if (mode == "basic") {
      spec.dpg_mode = DpgMode::kBasic;
    } else if (mode == "advanced") {
      spec.dpg_mode = DpgMode::kAdvanced;
    } else if (mode == "rank-invariant") {
      spec.dpg_mode = DpgMode::kRankInvariant;
    } else {
      throw std::invalid_argument("unknown dpg composition: " + mode);
    }
    spec.label = spec.name + "-" + mode;
  } else {
    spec.label = spec.name;
  }
  if (j.contains("label")) spec.label = j.at("label").get<std::string>();
  return spec;
}

struct BuiltInstance {
  DecomposableObjective objective;  // λ = 1
  std::shared_ptr<const Matroid> matroid;
  int agents = 0;
  double normalizer = 1.0;
};

// Inputs shared by every run: the pickup pool and the location list.
struct SharedInputs {
  PickupDataset pool;
  std::vector<Point> locations;
};

SharedInputs LoadSharedInputs(const ExperimentConfig& cfg) {
  SharedInputs shared;
  if (cfg.kind == ExperimentKind::kPartitionSweep) return shared;
  switch (cfg.dataset.kind) {
    case DatasetSpec::Kind::kFile:
      shared.pool = LoadPickups(cfg.dataset.path);
      break;
    case DatasetSpec::Kind::kSynthetic:
      shared.pool =
          SynthPickups(cfg.dataset.bbox, cfg.dataset.m, cfg.dataset.seed);
      break;
    case DatasetSpec::Kind::kSyntheticMixture:
      for (const auto& comp : cfg.dataset.components) {
        PickupDataset part = SynthPickups(comp.bbox, comp.m, comp.seed);
        shared.pool.points.insert(shared.pool.points.end(),
                                  part.points.begin(), part.points.end());
      }
      break;
  }
  switch (cfg.locations.kind) {
    case LocationsSpec::Kind::kGrid:
      shared.locations =
          BuildGrid(cfg.locations.bbox, cfg.locations.rows, cfg.locations.cols,
                    cfg.locations.corner_copies);
      break;
    case LocationsSpec::Kind::kCsv: {
      PickupDataset loc = LoadPickups(cfg.locations.path);
      shared.locations = loc.points;
      break;
    }
    case LocationsSpec::Kind::kInline:
      shared.locations = cfg.locations.points;
      break;
  }
  if (shared.locations.empty()) throw std::invalid_argument("no locations");
  return shared;
}

BuiltInstance BuildInstance(const ExperimentConfig& cfg,
                            const SharedInputs& shared, int64_t sweep_value,
                            int repetition) {
  if (cfg.kind == ExperimentKind::kPartitionSweep) {
    HardInstance hard = HardPartitionInstance(
        cfg.hard_instance.eps, static_cast<int>(sweep_value),
        cfg.hard_instance.mode);
    DecomposableObjective obj = std::abs(hard.objective.lambda() - 1.0) > 1e-12
                                    ? RescaleUnit(hard.objective)
                                    : hard.objective;
    return {std::move(obj), hard.matroid, static_cast<int>(sweep_value),
            static_cast<double>(sweep_value)};
  }

  PickupDataset points =
      cfg.sample_m > 0
          ? SamplePickups(shared.pool, cfg.sample_m,
                          DeriveSeed(cfg.seed, "pickups", "", sweep_value,
                                     repetition))
          : shared.pool;
  DecomposableObjective obj = BuildFacilityLocation(shared.locations, points);
  const int n = obj.ground_size();
  std::shared_ptr<const Matroid> matroid;
  if (cfg.kind == ExperimentKind::kCardinalitySweep) {
    matroid = std::make_shared<CardinalityMatroid>(
        n, static_cast<int>(sweep_value));
  } else {
    if (!cfg.matroid) throw std::invalid_argument("single-run requires a matroid");
    matroid = MatroidFromJson(*cfg.matroid, n);
  }
  const int agents = obj.agent_count();
  return {std::move(obj), std::move(matroid), agents, 1.0};
}

PrivacyBudget ResolveBudget(const AlgorithmSpec& spec, int agents) {
  PrivacyBudget budget;
  budget.epsilon = spec.epsilon;
  budget.delta = spec.delta_m_power
                     ? std::pow(static_cast<double>(agents), -*spec.delta_m_power)
                     : spec.delta;
  return budget;
}

struct RunOutput {
  double utility = 0;
  json trace;  // null unless traces requested
};

RunOutput RunOne(const ExperimentConfig& cfg, const AlgorithmSpec& spec,
                 const BuiltInstance& built, int64_t sweep_value,
                 int repetition, bool want_trace) {
  const uint64_t threshold_seed =
      DeriveSeed(cfg.seed, "thresholds", spec.label, sweep_value, repetition);
  const uint64_t mechanism_seed =
      DeriveSeed(cfg.seed, "mechanism", spec.label, sweep_value, repetition);
  const uint64_t rounding_seed =
      DeriveSeed(cfg.seed, "rounding", spec.label, sweep_value, repetition);

  std::vector<int> set;
  json trace;
  if (spec.name == "pcg" || spec.name == "pmcg" || spec.name == "cg") {
    AlgoConfig algo;
    algo.eta = spec.eta;
    algo.gamma = spec.gamma;
    algo.nonprivate = spec.nonprivate || spec.name == "cg";
    if (!algo.nonprivate) algo.budget = ResolveBudget(spec, built.agents);
    algo.samples = spec.samples;
    algo.threshold_seed = threshold_seed;
    algo.mechanism_seed = mechanism_seed;
    algo.rounding_seed = rounding_seed;
    RunResult result =
        spec.name == "pmcg"
            ? PrivateMeasuredContinuousGreedy(built.objective, built.matroid, algo)
            : PrivateContinuousGreedy(built.objective, built.matroid, algo);
    set = std::move(result.set);
    if (want_trace) {
      trace = result.trace.SummaryJson();
      trace["rounds"] = result.trace.RoundsJson();
    }
  } else if (spec.name == "greedy") {
    set = NonprivateGreedy(built.objective, *built.matroid);
  } else if (spec.name == "dpg") {
    std::optional<PrivacyBudget> budget;
    if (!spec.nonprivate) budget = ResolveBudget(spec, built.agents);
    set = DpgBaseline(built.objective, *built.matroid, budget, spec.dpg_mode,
                      mechanism_seed);
  } else if (spec.name == "random") {
    UniformRng rng(rounding_seed);
    set = RandomBasis(*built.matroid, rng);
  } else {
    throw std::invalid_argument("unknown algorithm: " + spec.name);
  }

  RunOutput out;
  out.utility = built.objective.Evaluate(set) / built.normalizer;
  if (want_trace) {
    if (trace.is_null()) trace = json::object();
    trace["algorithm"] = spec.label;
    trace["sweep"] = sweep_value;
    trace["repetition"] = repetition;
    trace["output_set"] = set;
    trace["utility"] = out.utility;
    out.trace = std::move(trace);
  }
  return out;
}

std::string FormatFixed9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string RenderSvg(const ExperimentConfig& cfg,
                      const std::vector<ResultRow>& rows) {
  // Group rows per algorithm, keep config order.
  std::vector<std::string> labels;
  for (const auto& algo : cfg.algorithms) labels.push_back(algo.label);

  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& row : rows) {
    x_min = std::min(x_min, static_cast<double>(row.sweep_value));
    x_max = std::max(x_max, static_cast<double>(row.sweep_value));
    y_min = std::min(y_min, row.mean - row.stddev);
    y_max = std::max(y_max, row.mean + row.stddev);
  }
  if (x_min >= x_max) {
    x_min -= 1;
    x_max += 1;
  }
  const double pad = (y_max - y_min) * 0.08 + 1e-12;
  y_min -= pad;
  y_max += pad;

  const double width = 720, height = 440;
  const double ml = 70, mr = 160, mt = 30, mb = 50;
  auto sx = [&](double v) {
    return ml + (v - x_min) / (x_max - x_min) * (width - ml - mr);
  };
  auto sy = [&](double v) {
    return height - mb - (v - y_min) / (y_max - y_min) * (height - mt - mb);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"440\" "
         "viewBox=\"0 0 720 440\">\n";
  svg += "<rect width=\"720\" height=\"440\" fill=\"white\"/>\n";
  // Axes.
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"black\"/>\n",
                ml, height - mb, width - mr, height - mb);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"black\"/>\n",
                ml, mt, ml, height - mb);
  svg += buf;
  for (int tick = 0; tick <= 4; ++tick) {
    const double yv = y_min + (y_max - y_min) * tick / 4;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" "
                  "text-anchor=\"end\">%.3f</text>\n",
                  ml - 6, sy(yv) + 4, yv);
    svg += buf;
    const double xv = x_min + (x_max - x_min) * tick / 4;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" "
                  "text-anchor=\"middle\">%.0f</text>\n",
                  sx(xv), height - mb + 18, xv);
    svg += buf;
  }
  const char* x_title =
      cfg.kind == ExperimentKind::kPartitionSweep ? "dataset size m" : "rank r";
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"13\" "
                "text-anchor=\"middle\">%s</text>\n",
                (ml + width - mr) / 2, height - 12, x_title);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"18\" y=\"%.1f\" font-size=\"13\" "
                "text-anchor=\"middle\" transform=\"rotate(-90 18 %.1f)\">"
                "utility</text>\n",
                (mt + height - mb) / 2, (mt + height - mb) / 2);
  svg += buf;

  int color_idx = 0;
  for (const auto& label : labels) {
    const char* color = kPalette[color_idx % 8];
    std::string points;
    for (const auto& row : rows) {
      if (row.algorithm != label) continue;
      const double x = sx(static_cast<double>(row.sweep_value));
      const double y = sy(row.mean);
      std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", x, y);
      points += buf;
      // 1-std error bar.
      std::snprintf(buf, sizeof(buf),
                    "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                    "stroke=\"%s\" stroke-width=\"1\"/>\n",
                    x, sy(row.mean - row.stddev), x, sy(row.mean + row.stddev),
                    color);
      svg += buf;
      std::snprintf(buf, sizeof(buf),
                    "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n",
                    x, y, color);
      svg += buf;
    }
    if (!points.empty()) {
      points.pop_back();
      svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    }
    const double ly = mt + 18.0 * color_idx + 10;
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"%s\" stroke-width=\"2\"/>\n",
                  width - mr + 12, ly, width - mr + 36, ly, color);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\">%s</text>\n",
                  width - mr + 42, ly + 4, label.c_str());
    svg += buf;
    ++color_idx;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

bool AlgorithmSpec::is_private() const {
  return (name == "pcg" || name == "pmcg" || name == "dpg") && !nonprivate;
}

int DatasetSpec::total_m() const {
  if (kind != Kind::kSyntheticMixture) return m;
  int total = 0;
  for (const auto& comp : components) total += comp.m;
  return total;
}

ExperimentConfig ExperimentConfig::FromJson(const json& doc) {
  ExperimentConfig cfg;
  cfg.raw = doc;
  const std::string kind = doc.at("experiment").get<std::string>();
  if (kind == "cardinality-sweep") {
    cfg.kind = ExperimentKind::kCardinalitySweep;
  } else if (kind == "partition-sweep") {
    cfg.kind = ExperimentKind::kPartitionSweep;
  } else if (kind == "single-run") {
    cfg.kind = ExperimentKind::kSingleRun;
  } else {
    throw std::invalid_argument("unknown experiment kind: " + kind);
  }
  if (doc.contains("sweep")) {
    cfg.sweep = doc.at("sweep").get<std::vector<int64_t>>();
    std::sort(cfg.sweep.begin(), cfg.sweep.end());
    cfg.sweep.erase(std::unique(cfg.sweep.begin(), cfg.sweep.end()),
                    cfg.sweep.end());
  }
  cfg.repetitions = doc.value("repetitions", 1);
  cfg.seed = doc.value("seed", uint64_t{1});
  cfg.sample_m = doc.value("sample_m", 0);
  cfg.threads = doc.value("threads", 0);
  if (doc.contains("dataset")) cfg.dataset = DatasetFromJson(doc.at("dataset"));
  if (doc.contains("locations")) {
    cfg.locations = LocationsFromJson(doc.at("locations"));
  }
  if (doc.contains("matroid")) cfg.matroid = doc.at("matroid");
  if (doc.contains("hard_instance")) {
    const auto& hard = doc.at("hard_instance");
    const std::string mode = hard.value("mode", "table");
    if (mode == "table") {
      cfg.hard_instance.mode = HardInstanceMode::kTable;
    } else if (mode == "geometric") {
      cfg.hard_instance.mode = HardInstanceMode::kGeometric;
    } else {
      throw std::invalid_argument("unknown hard_instance mode: " + mode);
    }
    cfg.hard_instance.eps = hard.value("eps", 0.2);
  }
  for (const auto& algo : doc.at("algorithms")) {
    cfg.algorithms.push_back(AlgorithmFromJson(algo));
  }
  cfg.emit_svg = doc.value("emit_svg", true);
  cfg.write_traces = doc.value("write_traces", false);
  if (doc.contains("reference")) cfg.reference = doc.at("reference");
  cfg.Validate();
  return cfg;
}

void ExperimentConfig::Validate() const {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms configured");
  if (kind != ExperimentKind::kSingleRun && sweep.empty()) {
    throw std::invalid_argument("sweep list must be non-empty");
  }
  if (kind != ExperimentKind::kPartitionSweep) {
    if (dataset.kind == DatasetSpec::Kind::kFile && !fs::exists(dataset.path)) {
      throw std::invalid_argument("dataset path does not exist: " + dataset.path);
    }
    if (locations.kind == LocationsSpec::Kind::kCsv &&
        !fs::exists(locations.path)) {
      throw std::invalid_argument("locations path does not exist: " +
                                  locations.path);
    }
  }
  for (const auto& algo : algorithms) {
    if (algo.is_private()) {
      if (!(algo.epsilon > 0)) {
        throw std::invalid_argument(algo.label + ": epsilon must be positive");
      }
      if (!algo.delta_m_power && !(algo.delta > 0 && algo.delta < 1)) {
        throw std::invalid_argument(algo.label + ": delta must be in (0,1)");
      }
    }
  }
}

void ComputeStats(ResultRow& row) {
  const size_t k = row.utilities.size();
  double sum = 0;
  for (double v : row.utilities) sum += v;
  row.mean = k > 0 ? sum / k : 0;
  double ss = 0;
  for (double v : row.utilities) ss += (v - row.mean) * (v - row.mean);
  row.stddev = k > 1 ? std::sqrt(ss / (k - 1)) : 0;
  row.stderr_ = k > 0 ? row.stddev / std::sqrt(static_cast<double>(k)) : 0;
}

ExperimentOutcome RunExperiment(const ExperimentConfig& cfg) {
  cfg.Validate();
  SharedInputs shared = LoadSharedInputs(cfg);

  std::vector<int64_t> sweep = cfg.sweep;
  if (sweep.empty()) sweep.push_back(0);

  const int num_sweeps = static_cast<int>(sweep.size());
  const int num_algos = static_cast<int>(cfg.algorithms.size());
  const int reps = cfg.repetitions;
  const int total = num_sweeps * num_algos * reps;

  const double kUnset = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> utilities(static_cast<size_t>(total), kUnset);
  std::vector<json> traces(cfg.write_traces ? total : 0);

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::string first_error;

  auto worker = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const int task = next.fetch_add(1);
      if (task >= total) break;
      const int sweep_idx = task / (num_algos * reps);
      const int rep = (task / num_algos) % reps;
      const int algo_idx = task % num_algos;
      try {
        BuiltInstance built =
            BuildInstance(cfg, shared, sweep[sweep_idx], rep);
        RunOutput out = RunOne(cfg, cfg.algorithms[algo_idx], built,
                               sweep[sweep_idx], rep, cfg.write_traces);
        utilities[task] = out.utility;
        if (cfg.write_traces) traces[task] = std::move(out.trace);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) {
          first_error = std::string(e.what()) + " (algorithm=" +
                        cfg.algorithms[algo_idx].label +
                        ", sweep=" + std::to_string(sweep[sweep_idx]) +
                        ", repetition=" + std::to_string(rep) + ")";
        }
      }
    }
  };

  int threads = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentOutcome outcome;
  outcome.total_runs = total;
  if (failed) outcome.error = first_error;

  for (int algo_idx = 0; algo_idx < num_algos; ++algo_idx) {
    for (int sweep_idx = 0; sweep_idx < num_sweeps; ++sweep_idx) {
      ResultRow row;
      row.algorithm = cfg.algorithms[algo_idx].label;
      row.sweep_value = sweep[sweep_idx];
      for (int rep = 0; rep < reps; ++rep) {
        const int task = (sweep_idx * reps + rep) * num_algos + algo_idx;
        if (!std::isnan(utilities[task])) {
          row.utilities.push_back(utilities[task]);
          ++outcome.completed_runs;
        }
      }
      if (row.utilities.empty()) continue;
      ComputeStats(row);
      outcome.rows.push_back(std::move(row));
    }
  }
  if (cfg.write_traces) {
    for (auto& trace : traces) {
      if (!trace.is_null()) outcome.traces.push_back(std::move(trace));
    }
  }
  return outcome;
}

void EmitReport(const ExperimentConfig& cfg, const ExperimentOutcome& outcome,
                const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::exists(out_dir)) {
    throw std::runtime_error("cannot create output directory " + out_dir);
  }
  {
    std::ofstream csv(fs::path(out_dir) / "summary.csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write summary.csv");
    csv << "algorithm,sweep,mean,std,stderr\n";
    for (const auto& row : outcome.rows) {
      csv << row.algorithm << ',' << row.sweep_value << ','
          << FormatFixed9(row.mean) << ',' << FormatFixed9(row.stddev) << ','
          << FormatFixed9(row.stderr_) << '\n';
    }
  }
  {
    std::ofstream raw(fs::path(out_dir) / "raw.jsonl", std::ios::binary);
    for (const auto& row : outcome.rows) {
      for (size_t rep = 0; rep < row.utilities.size(); ++rep) {
        json line{{"algorithm", row.algorithm},
                  {"sweep", row.sweep_value},
                  {"repetition", rep},
                  {"utility", row.utilities[rep]}};
        raw << line.dump() << '\n';
      }
    }
  }
  {
    json manifest;
    manifest["config"] = cfg.raw;
    manifest["completed_runs"] = outcome.completed_runs;
    manifest["total_runs"] = outcome.total_runs;
    if (outcome.error) manifest["error"] = *outcome.error;
    // Per-choice budget actually used, per private algorithm and sweep value.
    json eps0 = json::object();
    std::vector<int64_t> sweeps = cfg.sweep;
    if (sweeps.empty()) sweeps.push_back(0);
    for (const auto& algo : cfg.algorithms) {
      if (!algo.is_private()) continue;
      json per_sweep = json::object();
      for (int64_t sweep_value : sweeps) {
        int agents = cfg.kind == ExperimentKind::kPartitionSweep
                         ? static_cast<int>(sweep_value)
                         : (cfg.sample_m > 0 ? cfg.sample_m
                                             : cfg.dataset.total_m());
        if (agents < 1) agents = 1;
        PrivacyBudget budget = ResolveBudget(algo, agents);
        double value = 0;
        try {
          if (algo.name == "pcg") {
            value = Eps0Monotone(budget).epsilon0;
          } else if (algo.name == "pmcg") {
            value = Eps0Nonmonotone(budget).epsilon0;
          } else if (algo.name == "dpg") {
            // Rank is sweep-dependent only for cardinality sweeps.
            int rank = cfg.kind == ExperimentKind::kCardinalitySweep
                           ? static_cast<int>(sweep_value)
                           : 2;
            switch (algo.dpg_mode) {
              case DpgMode::kBasic:
                value = Eps0Composition(budget, rank, CompositionMode::kBasic)
                            .epsilon0;
                break;
              case DpgMode::kAdvanced:
                value = Eps0Composition(budget, rank,
                                        CompositionMode::kAdvanced)
                            .epsilon0;
                break;
              case DpgMode::kRankInvariant:
                value = Eps0Monotone(budget).epsilon0;
                break;
            }
          }
          per_sweep[std::to_string(sweep_value)] = value;
        } catch (const std::exception&) {
          per_sweep[std::to_string(sweep_value)] = nullptr;
        }
      }
      eps0[algo.label] = std::move(per_sweep);
    }
    manifest["epsilon0"] = std::move(eps0);
    if (!cfg.reference.is_null()) {
      manifest["reference"] = cfg.reference;
      if (cfg.reference.contains("epsilon0") &&
          manifest["epsilon0"].contains("pcg")) {
        const auto& per_sweep = manifest["epsilon0"]["pcg"];
        if (!per_sweep.empty()) {
          const double actual = per_sweep.begin().value().get<double>();
          const double ref = cfg.reference.at("epsilon0").get<double>();
          manifest["reference_epsilon0_divergence"] =
              std::abs(actual - ref) > 1e-4;
        }
      }
    }
    std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
    mf << manifest.dump(2) << '\n';
  }
  if (cfg.emit_svg && !outcome.rows.empty()) {
    std::ofstream svg(fs::path(out_dir) / "chart.svg", std::ios::binary);
    svg << RenderSvg(cfg, outcome.rows);
  }
  if (cfg.write_traces && !outcome.traces.empty()) {
    std::ofstream tf(fs::path(out_dir) / "traces.jsonl", std::ios::binary);
    for (const auto& trace : outcome.traces) tf << trace.dump() << '\n';
  }
  if (outcome.error) {
    json err{{"error", *outcome.error},
             {"completed_runs", outcome.completed_runs},
             {"total_runs", outcome.total_runs}};
    std::ofstream ef(fs::path(out_dir) / "error_manifest.json", std::ios::binary);
    ef << err.dump(2) << '\n';
  }
}

ParsedInstance ParseInstanceJson(const json& doc) {
  const json& objective = doc.at("objective");
  const std::string kind = objective.at("kind").get<std::string>();
  if (kind == "coverage") {
    auto covered =
        objective.at("agents").get<std::vector<std::vector<std::vector<int>>>>();
    DecomposableObjective obj =
        BuildCoverage(objective.at("universe").get<int>(), covered);
    auto matroid = MatroidFromJson(doc.at("matroid"), obj.ground_size());
    return {std::move(obj), std::move(matroid)};
  }
  if (kind == "modular") {
    auto values = objective.at("values").get<std::vector<double>>();
    DecomposableObjective obj = BuildModular(values);
    auto matroid = MatroidFromJson(doc.at("matroid"), obj.ground_size());
    return {std::move(obj), std::move(matroid)};
  }
  if (kind == "facility") {
    std::vector<Point> locations;
    for (const auto& pair : objective.at("locations")) {
      locations.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
    }
    PickupDataset pickups;
    const json& pk = objective.at("pickups");
    if (pk.is_array()) {
      for (const auto& pair : pk) {
        pickups.points.push_back({pair.at(0).get<double>(), pair.at(1).get<double>()});
      }
    } else {
      DatasetSpec spec = DatasetFromJson(pk);
      pickups = spec.kind == DatasetSpec::Kind::kFile
                    ? LoadPickups(spec.path)
                    : SynthPickups(spec.bbox, spec.m, spec.seed);
    }
    DecomposableObjective obj = BuildFacilityLocation(locations, pickups);
    auto matroid = MatroidFromJson(doc.at("matroid"), obj.ground_size());
    return {std::move(obj), std::move(matroid)};
  }
  if (kind == "hard-partition") {
    const std::string mode = objective.value("mode", "table");
    HardInstance hard = HardPartitionInstance(
        objective.value("eps", 0.2), objective.at("m").get<int>(),
        mode == "geometric" ? HardInstanceMode::kGeometric
                            : HardInstanceMode::kTable);
    return {std::move(hard.objective), std::move(hard.matroid)};
  }
  throw std::invalid_argument("unknown objective kind: " + kind);
}

}  // namespace psm
