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

#include "psm/convex_combination.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "psm/element_set.h"

namespace psm {

ConvexCombination::ConvexCombination(int ambient_size)
    : ambient_(ambient_size), point_(ambient_size, 0.0) {
  if (ambient_ < 1) throw std::invalid_argument("empty ambient space");
}

ConvexCombination ConvexCombination::Single(int ambient_size,
                                            std::vector<int> set) {
  ConvexCombination comb(ambient_size);
  comb.AddTerm(1.0, std::move(set));
  return comb;
}

void ConvexCombination::AddTerm(double weight, std::vector<int> set) {
  if (weight <= 0) throw std::invalid_argument("term weight must be positive");
  for (int u : set) {
    if (u < 0 || u >= ambient_) throw std::out_of_range("term element out of range");
    point_[u] += weight;
  }
  terms_.push_back({weight, std::move(set)});
}

double ConvexCombination::total_weight() const {
  double total = 0;
  for (const auto& term : terms_) total += term.weight;
  return total;
}

std::vector<double> ConvexCombination::ReconstructPoint() const {
  std::vector<double> y(ambient_, 0.0);
  for (const auto& term : terms_) {
    for (int u : term.set) y[u] += term.weight;
  }
  return y;
}

void ConvexCombination::Normalize() {
  double total = total_weight();
  if (total <= 0) throw std::invalid_argument("cannot normalize zero total weight");
  for (auto& term : terms_) term.weight /= total;
  for (double& v : point_) v /= total;
}

void ConvexCombination::Coalesce(double min_weight) {
  std::sort(terms_.begin(), terms_.end(),
            [](const WeightedSet& a, const WeightedSet& b) {
              return a.set < b.set;
            });
  std::vector<WeightedSet> merged;
  for (auto& term : terms_) {
    if (!merged.empty() && merged.back().set == term.set) {
      merged.back().weight += term.weight;
    } else {
      merged.push_back(std::move(term));
    }
  }
  double before = 0;
  for (const auto& term : merged) before += term.weight;
  std::erase_if(merged, [min_weight](const WeightedSet& t) {
    return t.weight < min_weight;
  });
  if (merged.empty()) throw std::runtime_error("all terms dropped in coalesce");
  double after = 0;
  for (const auto& term : merged) after += term.weight;
  // Rescale so dropping negligible terms does not shrink the total.
  const double scale = before / after;
  for (auto& term : merged) term.weight *= scale;
  terms_ = std::move(merged);
  std::vector<double> fresh = ReconstructPoint();
  point_ = std::move(fresh);
}

int ConvexCombination::SplitUpdate(int u, double eta, const Matroid& matroid) {
  if (u < 0 || u >= ambient_) throw std::out_of_range("element out of range");
  if (eta <= 0 || eta > 1) throw std::invalid_argument("eta must be in (0,1]");
  int repairs = 0;
  std::vector<WeightedSet> fresh;
  for (auto& term : terms_) {
    if (SetContains(term.set, u)) continue;
    std::vector<int> grown = SetWith(term.set, u);
    if (!matroid.IsIndependent(grown)) {
      // Repair: swap out the first element whose removal restores
      // independence. One exists because term.set itself is independent.
      int evicted = -1;
      for (int e : term.set) {
        std::vector<int> candidate = SetWithout(grown, e);
        if (matroid.IsIndependent(candidate)) {
          evicted = e;
          grown = std::move(candidate);
          break;
        }
      }
      if (evicted < 0) {
        throw std::runtime_error("split repair failed: oracle is not a matroid");
      }
      ++repairs;
      point_[evicted] -= term.weight * eta;
    }
    double moved = term.weight * eta;
    term.weight -= moved;
    fresh.push_back({moved, std::move(grown)});
    point_[u] += moved;
  }
  for (auto& term : fresh) terms_.push_back(std::move(term));
  Coalesce();
  return repairs;
}

void ConvexCombination::CheckConsistency(double tol) const {
  std::vector<double> y = ReconstructPoint();
  for (int u = 0; u < ambient_; ++u) {
    if (std::abs(y[u] - point_[u]) > tol) {
      throw std::runtime_error("convex combination lost track of its point");
    }
  }
}

std::pair<double, std::vector<int>> MergeBases(double w1, std::vector<int> b1,
                                               double w2, std::vector<int> b2,
                                               const Matroid& matroid,
                                               UniformRng& rng) {
  if (w1 <= 0 || w2 <= 0) throw std::invalid_argument("weights must be positive");
  if (b1.size() != b2.size()) {
    throw std::invalid_argument("merge requires equal-size sets (pad first)");
  }
  while (true) {
    std::vector<int> only1 = SetMinus(b1, b2);
    if (only1.empty()) break;
    const int b = only1.front();  // ascending pivot order, for determinism
    // Find an element valid for both directions of the swap. Equal-size
    // independent sets are bases of the matroid truncated at their size, so
    // a two-sided exchange always exists.
    int chosen = -1;
    std::vector<int> b1_stripped = SetWithout(b1, b);
    for (int e : SetMinus(b2, b1)) {
      if (!matroid.IsIndependent(SetWith(b1_stripped, e))) continue;
      std::vector<int> b2_swapped = SetWith(SetWithout(b2, e), b);
      if (!matroid.IsIndependent(b2_swapped)) continue;
      chosen = e;
      break;
    }
    if (chosen < 0) {
      throw std::runtime_error("no two-sided exchange: oracle is not a matroid");
    }
    if (rng.next_double() < w1 / (w1 + w2)) {
      b2 = SetWith(SetWithout(b2, chosen), b);
    } else {
      b1 = SetWith(b1_stripped, chosen);
    }
  }
  return {w1 + w2, std::move(b1)};
}

std::vector<int> SwapRound(const ConvexCombination& comb,
                           const Matroid& real_matroid, UniformRng& rng) {
  if (comb.terms().empty()) throw std::invalid_argument("empty combination");
  if (std::abs(comb.total_weight() - 1.0) > 1e-9) {
    throw std::invalid_argument("combination must be normalized before rounding");
  }
  size_t target = 0;
  for (const auto& term : comb.terms()) {
    target = std::max(target, term.set.size());
  }
  // Pad every term to the common size with shared dummy ids that are
  // independent of everything.
  const int pad_base = std::max(comb.ambient_size(), real_matroid.ground_size());
  const int padded_total = pad_base + static_cast<int>(target);
  auto inner = std::shared_ptr<const Matroid>(&real_matroid, [](const Matroid*) {});
  AugmentedMatroid merge_matroid(inner, padded_total);

  double weight = 0;
  std::vector<int> merged;
  bool first = true;
  for (const auto& term : comb.terms()) {
    std::vector<int> padded = term.set;
    const size_t deficit = target - padded.size();
    for (size_t k = 0; k < deficit; ++k) {
      padded.push_back(pad_base + static_cast<int>(k));
    }
    std::sort(padded.begin(), padded.end());
    if (first) {
      merged = std::move(padded);
      weight = term.weight;
      first = false;
      continue;
    }
    auto [w, set] = MergeBases(weight, std::move(merged), term.weight,
                               std::move(padded), merge_matroid, rng);
    weight = w;
    merged = std::move(set);
  }
  return merged;
}

}  // namespace psm
