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

#include "psm/matroid.h"

#include <numeric>
#include <stdexcept>

#include "psm/element_set.h"

namespace psm {

int Matroid::rank() const {
  if (!rank_) {
    std::vector<int> base;
    for (int u = 0; u < ground_size(); ++u) {
      base.push_back(u);
      if (!IsIndependent(base)) base.pop_back();
    }
    rank_ = static_cast<int>(base.size());
  }
  return *rank_;
}

CardinalityMatroid::CardinalityMatroid(int ground_size, int bound)
    : n_(ground_size), bound_(bound) {
  if (n_ < 1) throw std::invalid_argument("empty ground set");
  if (bound_ < 0) throw std::invalid_argument("negative cardinality bound");
}

bool CardinalityMatroid::IsIndependent(std::span<const int> set) const {
  return static_cast<int>(set.size()) <= bound_;
}

PartitionMatroid::PartitionMatroid(int ground_size,
                                   std::vector<std::vector<int>> parts,
                                   std::vector<int> capacities)
    : n_(ground_size), part_of_(ground_size, -1), capacities_(std::move(capacities)) {
  if (n_ < 1) throw std::invalid_argument("empty ground set");
  if (parts.size() != capacities_.size()) {
    throw std::invalid_argument("parts and capacities must align");
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    if (capacities_[i] < 0) throw std::invalid_argument("negative capacity");
    for (int u : parts[i]) {
      if (u < 0 || u >= n_) throw std::invalid_argument("part element out of range");
      if (part_of_[u] != -1) throw std::invalid_argument("parts must be disjoint");
      part_of_[u] = static_cast<int>(i);
    }
  }
}

bool PartitionMatroid::IsIndependent(std::span<const int> set) const {
  std::vector<int> used(capacities_.size(), 0);
  for (int u : set) {
    if (u < 0 || u >= n_) return false;
    int part = part_of_[u];
    if (part >= 0 && ++used[part] > capacities_[part]) return false;
  }
  return true;
}

AugmentedMatroid::AugmentedMatroid(std::shared_ptr<const Matroid> inner,
                                   int total_size)
    : inner_(std::move(inner)), total_(total_size) {
  if (!inner_) throw std::invalid_argument("null inner matroid");
  if (total_ < inner_->ground_size()) {
    throw std::invalid_argument("augmented ground smaller than inner ground");
  }
}

bool AugmentedMatroid::IsIndependent(std::span<const int> set) const {
  size_t real_len = 0;
  while (real_len < set.size() && set[real_len] < inner_->ground_size()) {
    ++real_len;
  }
  for (size_t i = real_len; i < set.size(); ++i) {
    if (set[i] >= total_) return false;
  }
  return inner_->IsIndependent(set.subspan(0, real_len));
}

std::vector<int> FeasibleExtensions(const Matroid& matroid,
                                    std::span<const int> base) {
  if (!matroid.IsIndependent(base)) {
    throw std::invalid_argument("base set is not independent");
  }
  std::vector<int> out;
  std::vector<int> probe(base.begin(), base.end());
  for (int u = 0; u < matroid.ground_size(); ++u) {
    if (SetContains(base, u)) continue;
    probe.insert(std::upper_bound(probe.begin(), probe.end(), u), u);
    if (matroid.IsIndependent(probe)) out.push_back(u);
    probe.erase(std::lower_bound(probe.begin(), probe.end(), u));
  }
  return out;
}

int FindExchange(const Matroid& matroid, std::span<const int> b1,
                 std::span<const int> b2, int b) {
  if (b1.size() != b2.size()) {
    throw std::invalid_argument("exchange requires equal-size sets");
  }
  if (!SetContains(b1, b) || SetContains(b2, b)) {
    throw std::invalid_argument("pivot must lie in b1 \\ b2");
  }
  std::vector<int> stripped = SetWithout(b1, b);
  for (int e : SetMinus(b2, b1)) {
    if (matroid.IsIndependent(SetWith(stripped, e))) return e;
  }
  throw std::runtime_error(
      "no exchange element found: oracle violates the matroid axioms");
}

std::vector<int> RandomBasis(const Matroid& matroid, UniformRng& rng) {
  std::vector<int> order(matroid.ground_size());
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  std::vector<int> base;
  for (int u : order) {
    auto pos = std::upper_bound(base.begin(), base.end(), u);
    base.insert(pos, u);
    if (!matroid.IsIndependent(base)) {
      base.erase(std::lower_bound(base.begin(), base.end(), u));
    }
  }
  return base;
}

std::shared_ptr<Matroid> MatroidFromJson(const nlohmann::json& spec,
                                         int ground_size) {
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "cardinality") {
    return std::make_shared<CardinalityMatroid>(ground_size,
                                                spec.at("r").get<int>());
  }
  if (kind == "partition") {
    auto parts = spec.at("parts").get<std::vector<std::vector<int>>>();
    auto caps = spec.at("capacities").get<std::vector<int>>();
    return std::make_shared<PartitionMatroid>(ground_size, std::move(parts),
                                              std::move(caps));
  }
  throw std::invalid_argument("unknown matroid kind: " + kind);
}

}  // namespace psm
