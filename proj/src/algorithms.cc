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

#include "psm/algorithms.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "psm/element_set.h"
#include "psm/rng.h"

namespace psm {

namespace {

uint64_t HashPoint(std::span<const double> y) {
  return Fnv1a64(std::string_view(reinterpret_cast<const char*>(y.data()),
                                  y.size() * sizeof(double)));
}

std::vector<int> StripDummies(std::span<const int> set, int real_size) {
  std::vector<int> out;
  for (int u : set) {
    if (u < real_size) out.push_back(u);
  }
  return out;
}

void CheckUnitScale(const DecomposableObjective& obj) {
  if (std::abs(obj.lambda() - 1.0) > 1e-9) {
    throw std::invalid_argument("objective must be rescaled to lambda = 1");
  }
}

enum class StepRule { kMonotone, kMeasured };

// Shared inner machinery of the two continuous-greedy variants. `comb`
// bookkeeping differs: the monotone rule records one term per outer round,
// the measured rule splits the running combination on every pick.
RunResult RunContinuousGreedy(const DecomposableObjective& obj,
                              std::shared_ptr<const Matroid> matroid,
                              const AlgoConfig& cfg, StepRule rule,
                              int real_size, int loop_rank) {
  const int n = obj.ground_size();
  const int r = loop_rank;  // inner rounds per outer round; the original rank
  const int T = cfg.rounds();

  RunTrace trace;
  trace.outer_rounds = T;
  trace.rank = r;
  trace.dummy_from = real_size < n ? real_size : -1;
  trace.dummy_count = n - real_size;

  RoundBudget round_budget = RoundBudget::Nonprivate();
  if (!cfg.nonprivate) {
    round_budget = rule == StepRule::kMonotone ? Eps0Monotone(cfg.budget)
                                               : Eps0Nonmonotone(cfg.budget);
  }
  trace.epsilon0 = round_budget.epsilon0;

  if (r == 0) {
    trace.combination = ConvexCombination::Single(n, {});
    return {std::vector<int>{}, std::move(trace)};
  }

  const int64_t s = cfg.samples ? *cfg.samples
                    : rule == StepRule::kMonotone
                        ? SamplesMonotone(r, T, n, cfg.gamma)
                        : SamplesNonmonotone(r, T, n, cfg.gamma);
  trace.samples = s;
  trace.explicit_samples = cfg.samples.has_value();

  ThresholdSamples thresholds(n, s, cfg.threshold_seed);
  GainEstimator estimator(obj, thresholds);
  UniformRng mechanism_rng(cfg.mechanism_seed);

  ConvexCombination comb = rule == StepRule::kMeasured
                               ? ConvexCombination::Single(n, {})
                               : ConvexCombination(n);

  std::vector<int> basis;
  std::vector<double> scores;
  for (int t = 1; t <= T; ++t) {
    basis.clear();
    for (int i = 1; i <= r; ++i) {
      std::vector<int> candidates = FeasibleExtensions(*matroid, basis);
      if (candidates.empty()) {
        trace.early_break_round = (t - 1) * r + (i - 1);
        break;
      }
      scores.clear();
      scores.reserve(candidates.size());
      for (int u : candidates) {
        scores.push_back(rule == StepRule::kMonotone
                             ? estimator.GainMonotone(u, cfg.eta)
                             : estimator.GainMeasured(u, cfg.eta));
      }
      const int idx = ExpMechanismSelect(scores, round_budget.epsilon0, 1.0,
                                         mechanism_rng);
      const int picked = candidates[idx];
      if (rule == StepRule::kMeasured) {
        trace.repair_count += comb.SplitUpdate(picked, cfg.eta, *matroid);
      }
      const double target = rule == StepRule::kMonotone
                                ? estimator.MonotoneTarget(picked, cfg.eta)
                                : estimator.MeasuredTarget(picked, cfg.eta);
      estimator.ApplyPick(picked, target);
      SetInsert(basis, picked);
      trace.rounds.push_back({t, i, picked,
                              static_cast<int>(candidates.size()), scores[idx],
                              *std::max_element(scores.begin(), scores.end()),
                              HashPoint(estimator.y())});
      if (cfg.record_solutions) {
        trace.solution_snapshots.push_back(estimator.y());
      }
    }
    if (rule == StepRule::kMonotone && !basis.empty()) {
      comb.AddTerm(cfg.eta, basis);
    }
    if (trace.early_break_round >= 0) break;
  }

  if (comb.terms().empty()) {
    trace.oracle_calls = estimator.oracle_calls();
    trace.combination = std::move(comb);
    return {std::vector<int>{}, std::move(trace)};
  }
  comb.Normalize();

  UniformRng rounding_rng(cfg.rounding_seed);
  trace.rounded_set = SwapRound(comb, *matroid, rounding_rng);
  trace.output_set = StripDummies(trace.rounded_set, real_size);
  trace.oracle_calls = estimator.oracle_calls();
  trace.combination = std::move(comb);
  return {trace.output_set, std::move(trace)};
}

}  // namespace

int DeriveRounds(double eta) {
  if (!(eta > 0) || eta > 1) throw std::invalid_argument("eta must be in (0,1]");
  int t = static_cast<int>(std::floor(1.0 / eta + 1e-9));
  if (t * eta < 1.0 - 1e-9) ++t;
  return std::max(t, 1);
}

void AlgoConfig::Validate() const {
  DeriveRounds(eta);
  if (!(gamma > 0) || gamma > 1) {
    throw std::invalid_argument("gamma must be in (0,1]");
  }
  if (!nonprivate) budget.Validate();
  if (samples && *samples < 1) {
    throw std::invalid_argument("explicit sample count must be >= 1");
  }
}

nlohmann::json RunTrace::SummaryJson() const {
  return nlohmann::json{
      {"epsilon0", epsilon0},
      {"samples", samples},
      {"explicit_samples", explicit_samples},
      {"outer_rounds", outer_rounds},
      {"rank", rank},
      {"inner_records", rounds.size()},
      {"repair_count", repair_count},
      {"oracle_calls", oracle_calls},
      {"early_break_round", early_break_round},
      {"dummy_from", dummy_from},
      {"dummy_count", dummy_count},
      {"rounded_set", rounded_set},
      {"output_set", output_set},
  };
}

nlohmann::json RunTrace::RoundsJson() const {
  nlohmann::json out = nlohmann::json::array();
  char hex[32];
  for (const auto& rec : rounds) {
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(rec.point_hash));
    out.push_back({{"t", rec.t},
                   {"i", rec.i},
                   {"picked", rec.picked},
                   {"candidates", rec.candidate_count},
                   {"estimated_gain", rec.estimated_gain},
                   {"best_gain", rec.best_gain},
                   {"point_hash", hex}});
  }
  return out;
}

std::string RunTrace::RoundsJsonLines() const {
  std::string out;
  for (const auto& rec : RoundsJson()) {
    out += rec.dump();
    out += '\n';
  }
  return out;
}

RunResult PrivateContinuousGreedy(const DecomposableObjective& obj,
                                  std::shared_ptr<const Matroid> matroid,
                                  const AlgoConfig& cfg) {
  cfg.Validate();
  CheckUnitScale(obj);
  if (obj.ground_size() != matroid->ground_size()) {
    throw std::invalid_argument("objective and matroid ground sets differ");
  }
#ifndef NDEBUG
  if (obj.ground_size() <= 10) {
    assert(CheckSubmodularMonotone(obj, CheckMode::kSampled, 200).monotone());
  }
#endif
  const int rank = matroid->rank();
  return RunContinuousGreedy(obj, std::move(matroid), cfg, StepRule::kMonotone,
                             obj.ground_size(), rank);
}

RunResult PrivateMeasuredContinuousGreedy(const DecomposableObjective& obj,
                                          std::shared_ptr<const Matroid> matroid,
                                          const AlgoConfig& cfg) {
  cfg.Validate();
  CheckUnitScale(obj);
  if (obj.ground_size() != matroid->ground_size()) {
    throw std::invalid_argument("objective and matroid ground sets differ");
  }
  const int real_size = obj.ground_size();
  const int r = matroid->rank();
  AugmentedInstance aug = AugmentWithDummies(obj, std::move(matroid), r);
  return RunContinuousGreedy(aug.objective, aug.matroid, cfg,
                             StepRule::kMeasured, real_size, r);
}

AugmentedInstance AugmentWithDummies(const DecomposableObjective& obj,
                                     std::shared_ptr<const Matroid> matroid,
                                     int extra) {
  AugmentedInstance out{
      PadWithDummies(obj, extra),
      std::make_shared<AugmentedMatroid>(std::move(matroid),
                                         obj.ground_size() + extra),
      obj.ground_size(), extra};
  return out;
}

std::vector<int> NonprivateGreedy(const DecomposableObjective& obj,
                                  const Matroid& matroid) {
  if (obj.ground_size() != matroid.ground_size()) {
    throw std::invalid_argument("objective and matroid ground sets differ");
  }
  std::vector<int> solution;
  auto cursor = obj.MakeCursor();
  while (true) {
    std::vector<int> candidates = FeasibleExtensions(matroid, solution);
    if (candidates.empty()) break;
    int best = -1;
    double best_gain = 0;
    for (int u : candidates) {  // ascending, so ties keep the lowest index
      double gain = cursor->peek_gain(u);
      if (best < 0 || gain > best_gain) {
        best = u;
        best_gain = gain;
      }
    }
    if (best_gain <= 0) break;
    cursor->add(best);
    SetInsert(solution, best);
  }
  return solution;
}

std::vector<int> DpgBaseline(const DecomposableObjective& obj,
                             const Matroid& matroid,
                             const std::optional<PrivacyBudget>& budget,
                             DpgMode mode, uint64_t mechanism_seed) {
  if (obj.ground_size() != matroid.ground_size()) {
    throw std::invalid_argument("objective and matroid ground sets differ");
  }
  const int r = matroid.rank();
  RoundBudget round_budget = RoundBudget::Nonprivate();
  if (budget) {
    switch (mode) {
      case DpgMode::kBasic:
        round_budget = Eps0Composition(*budget, r, CompositionMode::kBasic);
        break;
      case DpgMode::kAdvanced:
        round_budget = Eps0Composition(*budget, r, CompositionMode::kAdvanced);
        break;
      case DpgMode::kRankInvariant:
        round_budget = Eps0Monotone(*budget);
        break;
    }
  }
  UniformRng rng(mechanism_seed);
  std::vector<int> solution;
  auto cursor = obj.MakeCursor();
  std::vector<double> scores;
  for (int i = 0; i < r; ++i) {
    std::vector<int> candidates = FeasibleExtensions(matroid, solution);
    if (candidates.empty()) break;
    scores.clear();
    for (int u : candidates) scores.push_back(cursor->peek_gain(u));
    const int idx =
        ExpMechanismSelect(scores, round_budget.epsilon0, obj.lambda(), rng);
    cursor->add(candidates[idx]);
    SetInsert(solution, candidates[idx]);
  }
  return solution;
}

std::vector<int> NonprivateContinuousGreedy(const DecomposableObjective& obj,
                                            std::shared_ptr<const Matroid> matroid,
                                            double eta, int64_t samples,
                                            uint64_t seed) {
  AlgoConfig cfg;
  cfg.eta = eta;
  cfg.nonprivate = true;
  cfg.samples = samples;
  cfg.threshold_seed = DeriveSeed(seed, "thresholds");
  cfg.mechanism_seed = DeriveSeed(seed, "mechanism");
  cfg.rounding_seed = DeriveSeed(seed, "rounding");
  return PrivateContinuousGreedy(obj, std::move(matroid), cfg).set;
}

namespace {

void BruteForceDfs(const DecomposableObjective& obj, const Matroid& matroid,
                   int next, std::vector<int>& current,
                   BruteForceResult& best) {
  const double value = obj.Evaluate(current);
  if (value > best.value ||
      (value == best.value &&
       std::lexicographical_compare(current.begin(), current.end(),
                                    best.set.begin(), best.set.end()))) {
    best.value = value;
    best.set = current;
  }
  for (int u = next; u < obj.ground_size(); ++u) {
    current.push_back(u);
    if (matroid.IsIndependent(current)) {
      BruteForceDfs(obj, matroid, u + 1, current, best);
    }
    current.pop_back();
  }
}

}  // namespace

BruteForceResult BruteForceOpt(const DecomposableObjective& obj,
                               const Matroid& matroid) {
  if (obj.ground_size() > 20) {
    throw std::invalid_argument("brute force requires n <= 20");
  }
  if (obj.ground_size() != matroid.ground_size()) {
    throw std::invalid_argument("objective and matroid ground sets differ");
  }
  BruteForceResult best;
  best.value = -std::numeric_limits<double>::infinity();
  std::vector<int> current;
  BruteForceDfs(obj, matroid, 0, current, best);
  return best;
}

}  // namespace psm
