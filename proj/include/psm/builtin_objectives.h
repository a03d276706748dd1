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

#ifndef PSM_BUILTIN_OBJECTIVES_H_
#define PSM_BUILTIN_OBJECTIVES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "psm/objective.h"

namespace psm {

struct Point {
  double lat = 0;
  double lon = 0;
};

struct PickupDataset {
  std::vector<Point> points;
  // One conceptual individual per point; >1 collapses identical points.
  std::vector<int> multiplicities;  // empty means all 1
  double normalization = 0;         // 0 = derive from the instance

  int total_count() const;
};

// Normalized ℓ1 distance (|Δlat| + |Δlon|)/c, guaranteed in [0, 1].
// Throws std::invalid_argument if c ≤ 0 or the result exceeds 1 (c too small).
double ManhattanDistance(const Point& l, const Point& p, double c);

// Facility-location objective: one agent per pickup p with
// f_p(S) = 1 − min_{l∈S} distance(l, p) for S ≠ ∅ and f_p(∅) = 0, λ = 1.
// The normalization constant is taken from the dataset when positive,
// otherwise set to the largest location/pickup ℓ1 distance of the instance.
DecomposableObjective BuildFacilityLocation(std::span<const Point> locations,
                                            const PickupDataset& pickups);

// Coverage objective: f_I(S) = |∪_{u∈S} covered_I(u)| / |universe_I| where
// universe_I is the union of everything agent I can cover (error if empty).
// covered[agent][element] lists item ids from [0, universe_size).
DecomposableObjective BuildCoverage(
    int universe_size,
    const std::vector<std::vector<std::vector<int>>>& covered);

// Weighted-coverage agent over items with individual weights; value of a set
// is the total weight of covered items. Exposed for custom instances.
class WeightedCoverageAgent : public AgentFunction {
 public:
  // element_items[u] lists item ids covered by element u.
  WeightedCoverageAgent(int ground_size,
                        const std::vector<std::vector<int>>& element_items,
                        std::vector<double> item_weights);

  double value(std::span<const int> set) const override;
  double range_bound() const override { return bound_; }
  std::unique_ptr<SetCursor> MakeCursor() const override;

 private:
  friend class CoverageCursor;
  int blocks_ = 0;
  std::vector<uint64_t> element_masks_;  // ground_size × blocks_
  std::vector<double> item_weights_;
  double bound_ = 0;
};

// Modular objective f(S) = Σ_{u∈S} values[u], decomposed into one
// single-element indicator agent per element. Values must be non-negative.
DecomposableObjective BuildModular(std::span<const double> values);

// Directed-cut objective f(S) = w(edges leaving S) / w(all edges) on one
// agent; non-monotone submodular with range [0, 1]. Edges are (from, to, w).
DecomposableObjective BuildDirectedCut(
    int n, const std::vector<std::tuple<int, int, double>>& edges);

}  // namespace psm

#endif  // PSM_BUILTIN_OBJECTIVES_H_
