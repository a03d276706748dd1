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

#ifndef PSM_CONVEX_COMBINATION_H_
#define PSM_CONVEX_COMBINATION_H_

#include <span>
#include <utility>
#include <vector>

#include "psm/matroid.h"
#include "psm/rng.h"

namespace psm {

struct WeightedSet {
  double weight = 0;
  std::vector<int> set;  // sorted, unique
};

// A fractional point y ∈ [0,1]^n stored as an explicit weighted list of
// independent sets, y = Σ_k w_k · 1_{I_k}. The ambient dimension may exceed
// the real ground set when dummy elements are present.
class ConvexCombination {
 public:
  explicit ConvexCombination(int ambient_size);

  // Starts from a single full-weight term.
  static ConvexCombination Single(int ambient_size, std::vector<int> set);

  void AddTerm(double weight, std::vector<int> set);

  int ambient_size() const { return ambient_; }
  const std::vector<WeightedSet>& terms() const { return terms_; }
  double total_weight() const;

  // Reconstruction Σ_k w_k 1_{I_k}, computed from the terms.
  std::vector<double> ReconstructPoint() const;

  // Point maintained alongside the term updates; equals the reconstruction
  // up to float drift (checked by CheckConsistency).
  const std::vector<double>& point() const { return point_; }

  // Divides weights by their total; the represented point scales the same
  // way. Throws if the total is not positive.
  void Normalize();

  // Merges terms with identical sets and drops terms below min_weight, then
  // rescales back to the previous total.
  void Coalesce(double min_weight = 1e-12);

  // Splits every term not containing u into a (1-eta) copy and an eta copy
  // with u added; terms whose set would become dependent are repaired by an
  // exchange. Returns the number of repairs.
  int SplitUpdate(int u, double eta, const Matroid& matroid);

  // Throws std::runtime_error when the reconstruction and the tracked point
  // disagree beyond tol.
  void CheckConsistency(double tol = 1e-9) const;

 private:
  int ambient_;
  std::vector<WeightedSet> terms_;
  std::vector<double> point_;
};

// Randomized merge of two equal-size independent sets into one, preserving
// the combined weight. The survivor of each exchange is drawn with
// probability proportional to its weight. Returns (w1 + w2, merged set).
std::pair<double, std::vector<int>> MergeBases(double w1, std::vector<int> b1,
                                               double w2, std::vector<int> b2,
                                               const Matroid& matroid,
                                               UniformRng& rng);

// Left-fold of MergeBases over a normalized combination. Terms are padded to
// a common size with fresh dummy ids (treated as independent of everything);
// the returned set keeps those dummies — callers strip ids ≥ real ground
// size. Throws if the combination is not normalized.
std::vector<int> SwapRound(const ConvexCombination& comb,
                           const Matroid& real_matroid, UniformRng& rng);

}  // namespace psm

#endif  // PSM_CONVEX_COMBINATION_H_
