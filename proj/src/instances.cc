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

#include "psm/instances.h"

#include <cmath>
#include <stdexcept>

namespace psm {

HardInstance HardPartitionInstance(double eps, int m, HardInstanceMode mode) {
  if (!(eps > 0) || eps >= 0.5) {
    throw std::invalid_argument("eps must be in (0, 0.5)");
  }
  if (m < 1) throw std::invalid_argument("m must be >= 1");

  auto matroid =
      std::make_shared<PartitionMatroid>(3, std::vector<std::vector<int>>{{0}, {1, 2}},
                                         std::vector<int>{1, 1});

  if (mode == HardInstanceMode::kTable) {
    // Weighted coverage over items {a, b, c} with weights (1-eps, eps, 1-eps):
    //   A -> {a},  B -> {a, b},  C -> {c}
    // gives exactly f(B)=1, f(A)=f(C)=1-eps, f(A,B)=1, f(A,C)=2-2eps.
    std::vector<std::vector<int>> element_items{{0}, {0, 1}, {2}};
    std::vector<double> weights{1.0 - eps, eps, 1.0 - eps};
    auto agent =
        std::make_shared<WeightedCoverageAgent>(3, element_items, weights);
    GroundSet ground;
    ground.size = 3;
    ground.labels = {"A", "B", "C"};
    DecomposableObjective obj(std::move(ground), 2.0 - eps);
    obj.AddAgent(std::move(agent), m);
    return {std::move(obj), std::move(matroid)};
  }

  // Geometric mode. On the unit segment A=(0,0), C=(1,0) with B midway,
  // pickup mass p sits at A, p at C, and 1-2p at Q=(0.5,0.5), which is at
  // ℓ1 distance 1 from both A and C but only 0.5 from B. Then the best
  // singleton is B (value 0.5 per unit mass) while {A,C} is optimal:
  //   f(A)=f(C)=p, f(B)=0.5, f(A,B)=f(B,C)=0.5+0.5p, f(A,C)=2p,
  // so the trap needs 1/3 < p < 1/2, i.e. eps = 1-2p < 1/3.
  if (eps >= 1.0 / 3.0) {
    throw std::invalid_argument("geometric mode requires eps < 1/3");
  }
  const double p = (1.0 - eps) / 2.0;
  const std::vector<Point> locations{{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}};
  int at_a = static_cast<int>(std::llround(p * m));
  int at_c = at_a;
  int at_q = m - at_a - at_c;
  if (at_a < 1 || at_c < 1 || at_q < 1) {
    throw std::invalid_argument("m too small to realize the cluster masses");
  }
  PickupDataset pickups;
  pickups.points = {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.5}};
  pickups.multiplicities = {at_a, at_c, at_q};
  pickups.normalization = 1.0;
  DecomposableObjective obj = BuildFacilityLocation(locations, pickups);
  return {std::move(obj), std::move(matroid)};
}

}  // namespace psm
