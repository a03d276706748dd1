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

// Command-line front end: experiment runner, privacy audit, synthetic data
// generation, and a brute-force optimum oracle.
//
// Exit codes: 0 success, 2 configuration error, 3 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "psm/audit.h"
#include "psm/dataset.h"
#include "psm/experiment.h"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

json LoadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json doc;
  in >> doc;
  return doc;
}

int RunCommand(const std::string& config_path, const std::string& out_dir,
               std::optional<uint64_t> seed_override) {
  json doc = LoadJsonFile(config_path);
  if (doc.value("experiment", "") == "audit") {
    throw std::invalid_argument("audit configs run via the `audit` subcommand");
  }
  if (seed_override) doc["seed"] = *seed_override;
  psm::ExperimentConfig cfg = psm::ExperimentConfig::FromJson(doc);

  for (const auto& algo : cfg.algorithms) {
    if (algo.samples && (algo.name == "pcg" || algo.name == "pmcg")) {
      std::fprintf(stderr,
                   "warning: %s uses an explicit sample count s=%lld; the "
                   "estimation guarantees assume the schedule value\n",
                   algo.label.c_str(),
                   static_cast<long long>(*algo.samples));
    }
  }

  psm::ExperimentOutcome outcome = psm::RunExperiment(cfg);
  psm::EmitReport(cfg, outcome, out_dir);
  if (outcome.error) {
    std::fprintf(stderr, "run failed: %s\n", outcome.error->c_str());
    return kRuntimeError;
  }
  std::printf("wrote %s/summary.csv (%d/%d runs)\n", out_dir.c_str(),
              outcome.completed_runs, outcome.total_runs);
  return kOk;
}

int AuditCommand(const std::string& config_path, const std::string& out_path) {
  json doc = LoadJsonFile(config_path);
  const json& spec = doc.contains("audit") ? doc.at("audit") : doc;

  const std::string mode_name = spec.value("mode", "monotone");
  psm::AuditMode mode;
  if (mode_name == "monotone") {
    mode = psm::AuditMode::kMonotone;
  } else if (mode_name == "measured") {
    mode = psm::AuditMode::kMeasured;
  } else {
    throw std::invalid_argument("unknown audit mode: " + mode_name);
  }

  auto covered =
      spec.at("agents").get<std::vector<std::vector<std::vector<int>>>>();
  psm::DecomposableObjective obj_a =
      psm::BuildCoverage(spec.at("universe").get<int>(), covered);
  const int drop = spec.value("drop_agent", 0);
  psm::DecomposableObjective obj_b = obj_a.WithoutAgent(drop);
  auto matroid = psm::MatroidFromJson(spec.at("matroid"), obj_a.ground_size());

  psm::PrivacyBudget budget{spec.at("epsilon").get<double>(),
                            spec.at("delta").get<double>()};
  psm::AuditReport report = psm::AuditEnumerate(
      mode, obj_a, obj_b, matroid, spec.value("eta", 0.5), budget,
      spec.value("samples", int64_t{200}),
      spec.value("threshold_seed", uint64_t{1}));

  const json out = report.ToJson();
  if (out_path.empty()) {
    std::cout << out.dump(2) << '\n';
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out_path);
    f << out.dump(2) << '\n';
  }
  return kOk;
}

int SynthCommand(const std::string& bbox_arg, int m, uint64_t seed,
                 const std::string& out_path) {
  psm::BoundingBox box;
  if (std::sscanf(bbox_arg.c_str(), "%lf,%lf,%lf,%lf", &box.lat_min,
                  &box.lon_min, &box.lat_max, &box.lon_max) != 4) {
    throw std::invalid_argument("--bbox expects lat_min,lon_min,lat_max,lon_max");
  }
  psm::PickupDataset dataset = psm::SynthPickups(box, m, seed);
  psm::SavePickups(dataset, out_path);
  std::printf("wrote %d pickups to %s\n", m, out_path.c_str());
  return kOk;
}

int OptCommand(const std::string& instance_path) {
  json doc = LoadJsonFile(instance_path);
  psm::ParsedInstance instance = psm::ParseInstanceJson(doc);
  psm::BruteForceResult best =
      psm::BruteForceOpt(instance.objective, *instance.matroid);
  json out{{"set", best.set}, {"value", best.value}};
  std::cout << out.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private decomposable submodular maximization"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out", out_path, bbox_arg, instance_path;
  int m = 100;
  uint64_t seed = 1;
  std::optional<uint64_t> seed_override;

  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--out", out_dir, "output directory");
  uint64_t seed_opt = 0;
  auto* seed_flag = run->add_option("--seed", seed_opt, "override master seed");

  auto* audit = app.add_subcommand("audit", "Enumerate output distributions "
                                            "of neighboring inputs");
  audit->add_option("--config", config_path, "JSON config file")->required();
  audit->add_option("--out", out_path, "write the report here (default stdout)");

  auto* synth = app.add_subcommand("synth", "Generate synthetic pickups CSV");
  synth->add_option("--bbox", bbox_arg, "lat_min,lon_min,lat_max,lon_max")
      ->required();
  synth->add_option("--m", m, "number of points")->required();
  synth->add_option("--seed", seed, "stream seed");
  synth->add_option("--out", out_path, "output CSV path")->required();

  auto* opt = app.add_subcommand("opt", "Brute-force optimum of an instance");
  opt->add_option("--instance", instance_path, "instance JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (seed_flag->count() > 0) seed_override = seed_opt;
      return RunCommand(config_path, out_dir, seed_override);
    }
    if (audit->parsed()) return AuditCommand(config_path, out_path);
    if (synth->parsed()) return SynthCommand(bbox_arg, m, seed, out_path);
    if (opt->parsed()) return OptCommand(instance_path);
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kRuntimeError;
  }
  return kOk;
}
