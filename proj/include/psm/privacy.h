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

#ifndef PSM_PRIVACY_H_
#define PSM_PRIVACY_H_

#include <span>
#include <string>

#include "psm/rng.h"

namespace psm {

struct PrivacyBudget {
  double epsilon = 0;
  double delta = 0;

  // Throws std::invalid_argument unless ε > 0 and δ ∈ (0,1).
  void Validate() const;
};

enum class BudgetDerivation {
  kMonotoneRankInvariant,
  kNonmonotoneRankInvariant,
  kBasicComposition,
  kAdvancedComposition,
  kNonprivate,
};

// Per-choice budget ε₀ fed to the exponential mechanism. The non-private
// sentinel carries ε₀ = ∞ and makes the mechanism a uniform argmax.
struct RoundBudget {
  double epsilon0 = 0;
  BudgetDerivation derivation = BudgetDerivation::kNonprivate;

  bool nonprivate() const;
  static RoundBudget Nonprivate();
};

std::string ToString(BudgetDerivation d);

// ε₀ = 2·ln(1 + ε/(4 + ln(1/δ))). Whole-run guarantee:
// (e^{ε₀/2} − 1)(4 + ln(1/δ)) = ε.
RoundBudget Eps0Monotone(const PrivacyBudget& budget);

// ε₀ = ε/(14 + 4·ln(1/δ)). Whole-run guarantee: (14 + 4·ln(1/δ))·ε₀ = ε.
RoundBudget Eps0Nonmonotone(const PrivacyBudget& budget);

enum class CompositionMode { kBasic, kAdvanced };

// Composition baselines over r sequential selections.
//   basic:    ε₀ = ε/r (pure-DP rounds compose additively; δ unchanged).
//   advanced: ε₀ = ε/(2·sqrt(2·r·ln(1/δ'))) with δ' = δ/(r+1). This follows
//     the Dwork–Rothblum–Vadhan composition bound
//       ε_total ≤ sqrt(2r·ln(1/δ''))·ε₀ + r·ε₀·(e^{ε₀} − 1)
//     with δ'' = δ' and each round (ε₀, δ')-DP, bounding the second term by
//     the first in the small-ε₀ regime and spending total δ = (r+1)·δ'.
RoundBudget Eps0Composition(const PrivacyBudget& budget, int r,
                            CompositionMode mode);

// Samples an index with probability ∝ exp(ε₀·score/(2·sensitivity)),
// stabilized by max-score subtraction. The non-private sentinel returns a
// uniform draw among the exact argmax set. Throws on an empty candidate
// list or non-finite scores.
int ExpMechanismSelect(std::span<const double> scores, double epsilon0,
                       double sensitivity, UniformRng& rng);

}  // namespace psm

#endif  // PSM_PRIVACY_H_
