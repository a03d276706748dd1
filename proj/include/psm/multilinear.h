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

#ifndef PSM_MULTILINEAR_H_
#define PSM_MULTILINEAR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "psm/objective.h"

namespace psm {

// Exact multilinear extension F(x) = Σ_S f(S) Π_{u∈S} x_u Π_{u∉S} (1-x_u)
// by full enumeration. Refuses n > 20.
double ExactMultilinear(const DecomposableObjective& obj,
                        std::span<const double> x);

// s fixed uniform vectors r^j ∈ [0,1)^n drawn once from a seeded stream.
// The proxy G(x) = (1/s) Σ_j f({u : r^j_u < x_u}) is a deterministic
// function of x given these thresholds.
class ThresholdSamples {
 public:
  ThresholdSamples(int n, int64_t s, uint64_t seed);

  int n() const { return n_; }
  int64_t s() const { return s_; }
  uint64_t seed() const { return seed_; }

  double threshold(int64_t j, int u) const { return thr_[j * n_ + u]; }

  // {u : r^j_u < x_u}, ascending.
  std::vector<int> LevelSet(int64_t j, std::span<const double> x) const;

 private:
  int n_;
  int64_t s_;
  uint64_t seed_;
  std::vector<double> thr_;  // row-major [j][u]
};

// (1/s) Σ_j f(level set j at x). Level sets are evaluated in sample order
// with a single reused cursor, so the result is a fixed-order sum. Adds the
// number of objective queries to *oracle_calls when provided.
double EstimateG(const DecomposableObjective& obj, const ThresholdSamples& ts,
                 std::span<const double> x, long long* oracle_calls = nullptr);

// G(y + step·1_u) − G(y) evaluated definitionally via two EstimateG calls.
double DefinitionalGain(const DecomposableObjective& obj,
                        const ThresholdSamples& ts, std::span<const double> y,
                        int u, double new_yu, long long* oracle_calls = nullptr);

// Incremental gain oracle used by the greedy loops. Maintains one cursor per
// sample over the growing level sets; a gain query touches only the samples
// whose threshold for u falls inside the step window, in ascending threshold
// order (a fixed summation order, so results are reproducible).
class GainEstimator {
 public:
  GainEstimator(const DecomposableObjective& obj, const ThresholdSamples& ts);

  // G(y + η·1_u) − G(y) with the coordinate clamped at 1.
  double GainMonotone(int u, double eta) const;

  // G(y + η(1-y_u)·1_u) − G(y).
  double GainMeasured(int u, double eta) const;

  // Step targets for the two update rules.
  double MonotoneTarget(int u, double eta) const;
  double MeasuredTarget(int u, double eta) const;

  // Moves y_u to new_yu (≥ y_u) and extends the affected level sets.
  void ApplyPick(int u, double new_yu);

  const std::vector<double>& y() const { return y_; }
  double CurrentG() const;
  long long oracle_calls() const { return oracle_calls_; }

 private:
  double WindowSum(int u, double lo, double hi) const;

  const ThresholdSamples& ts_;
  std::vector<double> y_;
  std::vector<std::unique_ptr<SetCursor>> cursors_;  // one per sample
  // Per element: sample ids ordered by threshold, plus the sorted thresholds.
  std::vector<int32_t> sorted_ids_;
  std::vector<double> sorted_thr_;
  mutable long long oracle_calls_ = 0;
};

// Sample-count schedules; ceil of the stated formulas with natural logs.
int64_t SamplesMonotone(int r, int T, int n, double gamma);
int64_t SamplesNonmonotone(int r, int T, int n, double gamma);

}  // namespace psm

#endif  // PSM_MULTILINEAR_H_
