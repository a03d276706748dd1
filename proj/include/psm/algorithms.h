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

#ifndef PSM_ALGORITHMS_H_
#define PSM_ALGORITHMS_H_

#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"
#include "psm/convex_combination.h"
#include "psm/matroid.h"
#include "psm/multilinear.h"
#include "psm/objective.h"
#include "psm/privacy.h"

namespace psm {

// Outer round count T = ⌈1/η⌉, tolerant of float representation of η.
int DeriveRounds(double eta);

struct AlgoConfig {
  double eta = 0.2;
  double gamma = 0.1;
  PrivacyBudget budget;
  bool nonprivate = false;          // ε₀ = ∞ sentinel
  std::optional<int64_t> samples;   // explicit s; default uses the schedule
  uint64_t threshold_seed = 1;
  uint64_t mechanism_seed = 2;
  uint64_t rounding_seed = 3;
  bool record_solutions = false;    // keep per-round fractional snapshots

  int rounds() const { return DeriveRounds(eta); }
  void Validate() const;
};

struct RoundRecord {
  int t = 0;
  int i = 0;
  int picked = -1;
  int candidate_count = 0;
  double estimated_gain = 0;  // score of the picked element
  double best_gain = 0;       // best candidate score this round
  uint64_t point_hash = 0;
};

struct RunTrace {
  std::vector<RoundRecord> rounds;
  ConvexCombination combination{1};
  int repair_count = 0;
  std::vector<int> rounded_set;  // may contain dummy/pad ids
  std::vector<int> output_set;   // dummies stripped
  long long oracle_calls = 0;
  double epsilon0 = 0;
  int64_t samples = 0;
  bool explicit_samples = false;
  int outer_rounds = 0;
  int rank = 0;
  int dummy_from = -1;
  int dummy_count = 0;
  int early_break_round = -1;  // flat (t,i) index, -1 if none
  std::vector<std::vector<double>> solution_snapshots;

  nlohmann::json SummaryJson() const;
  nlohmann::json RoundsJson() const;       // array form of the records
  std::string RoundsJsonLines() const;     // one JSON object per line
};

struct RunResult {
  std::vector<int> set;
  RunTrace trace;
};

// Continuous greedy with exponential-mechanism selection over proxy-estimated
// marginal gains, followed by swap rounding. Requires λ = 1 (rescale first)
// and a monotone objective.
RunResult PrivateContinuousGreedy(const DecomposableObjective& obj,
                                  std::shared_ptr<const Matroid> matroid,
                                  const AlgoConfig& cfg);

// Measured variant for non-monotone objectives: dummy-augmented ground set,
// damped update steps, and split-with-repair bookkeeping of the fractional
// point. Dummies are stripped from the returned set.
RunResult PrivateMeasuredContinuousGreedy(const DecomposableObjective& obj,
                                          std::shared_ptr<const Matroid> matroid,
                                          const AlgoConfig& cfg);

struct AugmentedInstance {
  DecomposableObjective objective;
  std::shared_ptr<const AugmentedMatroid> matroid;
  int dummy_from = 0;
  int dummy_count = 0;
};

// Appends `extra` zero-valued, freely addable elements.
AugmentedInstance AugmentWithDummies(const DecomposableObjective& obj,
                                     std::shared_ptr<const Matroid> matroid,
                                     int extra);

// Discrete greedy on exact marginal gains; ties to the lowest index; stops
// once no feasible element has strictly positive gain.
std::vector<int> NonprivateGreedy(const DecomposableObjective& obj,
                                  const Matroid& matroid);

enum class DpgMode { kBasic, kAdvanced, kRankInvariant };

// Discrete greedy with exponential-mechanism selection on exact marginal
// gains; per-round budget from the composition rule (or the rank-invariant
// schedule). Passing no budget selects the non-private sentinel.
std::vector<int> DpgBaseline(const DecomposableObjective& obj,
                             const Matroid& matroid,
                             const std::optional<PrivacyBudget>& budget,
                             DpgMode mode, uint64_t mechanism_seed);

// Continuous greedy ablation anchor: the private algorithm with the
// non-private sentinel. Sub-seeds are derived from `seed`.
std::vector<int> NonprivateContinuousGreedy(const DecomposableObjective& obj,
                                            std::shared_ptr<const Matroid> matroid,
                                            double eta, int64_t samples,
                                            uint64_t seed);

struct BruteForceResult {
  std::vector<int> set;
  double value = 0;
};

// Exhaustive scan over independent sets (downward-closed pruning); ties go
// to the lexicographically smallest set. Refuses n > 20.
BruteForceResult BruteForceOpt(const DecomposableObjective& obj,
                               const Matroid& matroid);

}  // namespace psm

#endif  // PSM_ALGORITHMS_H_
