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

#ifndef PSM_ADAPTIVE_PROCESS_H_
#define PSM_ADAPTIVE_PROCESS_H_

#include <functional>

#include "psm/rng.h"

namespace psm {

// A one-shot distribution over [0,1] an adversary plays in one round.
// Construction validates the support.
class BoundedDistribution {
 public:
  static BoundedDistribution PointMass(double v);
  static BoundedDistribution TwoPoint(double lo, double hi, double p_hi);
  static BoundedDistribution Uniform(double a, double b);

  double mean() const { return mean_; }
  double Sample(UniformRng& rng) const;

 private:
  enum class Kind { kPoint, kTwoPoint, kUniform };
  BoundedDistribution(Kind kind, double a, double b, double p);

  Kind kind_;
  double a_, b_, p_;
  double mean_;
};

// Chooses the round distribution, possibly adaptively: `remaining` is the
// current multiplicative remainder Z_i.
using Adversary = std::function<BoundedDistribution(int round, double remaining)>;

// Multiplicative depletion process: Z_1 = 1, a sample R_i from the
// adversary's round distribution shrinks Z_{i+1} = Z_i(1 - R_i), and
// Y_1 = Σ_i Z_i·E[R_i] accumulates the expected increments. Returns the
// fraction of trials with Y_1 ≥ q (the tail to compare with exp(3 - q)).
double SimulateAdaptiveProcess(const Adversary& adversary, double q,
                               int rounds, long long trials, UniformRng& rng);

}  // namespace psm

#endif  // PSM_ADAPTIVE_PROCESS_H_
