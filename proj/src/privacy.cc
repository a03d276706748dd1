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

#include "psm/privacy.h"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace psm {

void PrivacyBudget::Validate() const {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (!(delta > 0) || delta >= 1) {
    throw std::invalid_argument("delta must be in (0,1)");
  }
}

bool RoundBudget::nonprivate() const {
  return derivation == BudgetDerivation::kNonprivate ||
         std::isinf(epsilon0);
}

RoundBudget RoundBudget::Nonprivate() {
  return {std::numeric_limits<double>::infinity(),
          BudgetDerivation::kNonprivate};
}

std::string ToString(BudgetDerivation d) {
  switch (d) {
    case BudgetDerivation::kMonotoneRankInvariant:
      return "monotone-rank-invariant";
    case BudgetDerivation::kNonmonotoneRankInvariant:
      return "nonmonotone-rank-invariant";
    case BudgetDerivation::kBasicComposition:
      return "basic-composition";
    case BudgetDerivation::kAdvancedComposition:
      return "advanced-composition";
    case BudgetDerivation::kNonprivate:
      return "nonprivate";
  }
  return "unknown";
}

RoundBudget Eps0Monotone(const PrivacyBudget& budget) {
  budget.Validate();
  const double log_term = 4.0 + std::log(1.0 / budget.delta);
  return {2.0 * std::log1p(budget.epsilon / log_term),
          BudgetDerivation::kMonotoneRankInvariant};
}

RoundBudget Eps0Nonmonotone(const PrivacyBudget& budget) {
  budget.Validate();
  return {budget.epsilon / (14.0 + 4.0 * std::log(1.0 / budget.delta)),
          BudgetDerivation::kNonmonotoneRankInvariant};
}

RoundBudget Eps0Composition(const PrivacyBudget& budget, int r,
                            CompositionMode mode) {
  budget.Validate();
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  if (mode == CompositionMode::kBasic) {
    return {budget.epsilon / r, BudgetDerivation::kBasicComposition};
  }
  const double delta_round = budget.delta / (r + 1);
  return {budget.epsilon / (2.0 * std::sqrt(2.0 * r * std::log(1.0 / delta_round))),
          BudgetDerivation::kAdvancedComposition};
}

int ExpMechanismSelect(std::span<const double> scores, double epsilon0,
                       double sensitivity, UniformRng& rng) {
  if (scores.empty()) throw std::invalid_argument("no candidates to select from");
  if (!(sensitivity > 0)) throw std::invalid_argument("sensitivity must be positive");
  double best = -std::numeric_limits<double>::infinity();
  for (double s : scores) {
    if (!std::isfinite(s)) throw std::invalid_argument("scores must be finite");
    best = std::max(best, s);
  }

  if (std::isinf(epsilon0)) {
    // Non-private sentinel: uniform among the exact argmax set.
    std::vector<int> argmax;
    for (size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] == best) argmax.push_back(static_cast<int>(i));
    }
    return argmax[rng.next_index(argmax.size())];
  }
  if (!(epsilon0 > 0)) throw std::invalid_argument("epsilon0 must be positive");

  std::vector<double> weights(scores.size());
  double total = 0;
  const double scale = epsilon0 / (2.0 * sensitivity);
  for (size_t i = 0; i < scores.size(); ++i) {
    weights[i] = std::exp(scale * (scores[i] - best));
    total += weights[i];
  }
  double draw = rng.next_double() * total;
  for (size_t i = 0; i < scores.size(); ++i) {
    draw -= weights[i];
    if (draw < 0) return static_cast<int>(i);
  }
  return static_cast<int>(scores.size()) - 1;  // float underrun guard
}

}  // namespace psm
