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

#ifndef PSM_INSTANCES_H_
#define PSM_INSTANCES_H_

#include <memory>

#include "psm/builtin_objectives.h"
#include "psm/matroid.h"
#include "psm/objective.h"

namespace psm {

// Three-element greedy trap under the partition {{A},{B,C}} with unit
// capacities: B is the best singleton, but {A,C} is the optimum, so a
// myopic first pick forfeits roughly half the value.
enum class HardInstanceMode {
  // m identical weighted-coverage agents realizing the value table
  //   f(B)=1, f(A)=f(C)=1-eps, f(A,B)=1, f(A,C)=2-2eps
  // per agent (range 2-eps; rescale before running the algorithms).
  kTable,
  // Facility-location realization: locations A, B, C and three pickup
  // clusters (two at A and C, one equidistant from both) whose masses tilt
  // the singleton optimum to B. Requires eps < 1/3.
  kGeometric,
};

struct HardInstance {
  DecomposableObjective objective;
  std::shared_ptr<PartitionMatroid> matroid;
  int a = 0, b = 1, c = 2;  // element indices
};

// eps in (0, 0.5); m = number of agents (pickups).
HardInstance HardPartitionInstance(double eps, int m, HardInstanceMode mode);

}  // namespace psm

#endif  // PSM_INSTANCES_H_
