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

#ifndef PSM_AUDIT_H_
#define PSM_AUDIT_H_

#include <vector>

#include "json.hpp"
#include "psm/matroid.h"
#include "psm/multilinear.h"
#include "psm/objective.h"
#include "psm/privacy.h"

namespace psm {

enum class AuditMode { kMonotone, kMeasured };

struct SequenceProb {
  std::vector<int> picks;
  double prob_a = 0;
  double prob_b = 0;
};

// Exact output distribution of the greedy selection sequence under two
// neighboring agent sets, conditioned on shared thresholds.
struct AuditReport {
  double epsilon_claimed = 0;   // whole-run guarantee for the derived ε₀
  double epsilon_observed = 0;  // smallest ε with ≤ δ excess mass both ways
  double delta = 0;
  double delta_excess = 0;      // excess mass at epsilon_claimed
  double max_log_ratio = 0;     // max |ln(P_A/P_B)| over sequences
  double epsilon0 = 0;
  std::vector<SequenceProb> sequences;

  nlohmann::json ToJson(bool include_sequences = true) const;
};

// Enumerates every selection sequence of the private greedy loop on inputs
// a and b, computing exact chain-rule probabilities from the exponential-
// mechanism weights (sensitivity fixed at λ = 1; both objectives must be
// 1-decomposable). Thresholds are drawn once from threshold_seed and shared
// across both inputs. In measured mode the ground set is augmented with
// rank-many dummies first, exactly as the run-time algorithm does. Refuses
// instances whose sequence space exceeds max_sequences.
AuditReport AuditEnumerate(AuditMode mode, const DecomposableObjective& a,
                           const DecomposableObjective& b,
                           std::shared_ptr<const Matroid> matroid, double eta,
                           const PrivacyBudget& budget, int64_t samples,
                           uint64_t threshold_seed,
                           double max_sequences = 1e5);

}  // namespace psm

#endif  // PSM_AUDIT_H_
