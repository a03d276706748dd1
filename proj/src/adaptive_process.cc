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

#include "psm/adaptive_process.h"

#include <stdexcept>

namespace psm {

namespace {

void CheckUnit(double v) {
  if (v < 0 || v > 1) {
    throw std::invalid_argument("adversary distribution leaves [0,1]");
  }
}

}  // namespace

BoundedDistribution::BoundedDistribution(Kind kind, double a, double b,
                                         double p)
    : kind_(kind), a_(a), b_(b), p_(p) {
  CheckUnit(a_);
  CheckUnit(b_);
  switch (kind_) {
    case Kind::kPoint:
      mean_ = a_;
      break;
    case Kind::kTwoPoint:
      if (p_ < 0 || p_ > 1) throw std::invalid_argument("probability outside [0,1]");
      mean_ = (1 - p_) * a_ + p_ * b_;
      break;
    case Kind::kUniform:
      if (b_ < a_) throw std::invalid_argument("empty uniform support");
      mean_ = 0.5 * (a_ + b_);
      break;
  }
}

BoundedDistribution BoundedDistribution::PointMass(double v) {
  return BoundedDistribution(Kind::kPoint, v, v, 1);
}

BoundedDistribution BoundedDistribution::TwoPoint(double lo, double hi,
                                                  double p_hi) {
  return BoundedDistribution(Kind::kTwoPoint, lo, hi, p_hi);
}

BoundedDistribution BoundedDistribution::Uniform(double a, double b) {
  return BoundedDistribution(Kind::kUniform, a, b, 0);
}

double BoundedDistribution::Sample(UniformRng& rng) const {
  switch (kind_) {
    case Kind::kPoint:
      return a_;
    case Kind::kTwoPoint:
      return rng.next_double() < p_ ? b_ : a_;
    case Kind::kUniform:
      return a_ + (b_ - a_) * rng.next_double();
  }
  return a_;
}

double SimulateAdaptiveProcess(const Adversary& adversary, double q,
                               int rounds, long long trials, UniformRng& rng) {
  if (!(q > 0)) throw std::invalid_argument("q must be positive");
  if (rounds < 1 || trials < 1) {
    throw std::invalid_argument("rounds and trials must be positive");
  }
  long long hits = 0;
  for (long long trial = 0; trial < trials; ++trial) {
    double z = 1.0;
    double y = 0.0;
    for (int i = 0; i < rounds; ++i) {
      BoundedDistribution dist = adversary(i, z);
      y += z * dist.mean();
      z *= 1.0 - dist.Sample(rng);
    }
    if (y >= q) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials);
}

}  // namespace psm
