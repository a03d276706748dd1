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

#ifndef PSM_MATROID_H_
#define PSM_MATROID_H_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "psm/rng.h"

namespace psm {

// Independence oracle. Immutable after construction; safe for concurrent
// queries.
class Matroid {
 public:
  virtual ~Matroid() = default;

  virtual int ground_size() const = 0;

  // Membership of `set` (sorted, unique) in the independent-set family.
  virtual bool IsIndependent(std::span<const int> set) const = 0;

  // Maximum independent-set size, computed greedily and cached.
  int rank() const;

 private:
  mutable std::optional<int> rank_;
};

// S independent iff |S| ≤ bound.
class CardinalityMatroid : public Matroid {
 public:
  CardinalityMatroid(int ground_size, int bound);
  int ground_size() const override { return n_; }
  bool IsIndependent(std::span<const int> set) const override;
  int bound() const { return bound_; }

 private:
  int n_;
  int bound_;
};

// S independent iff |S ∩ P_i| ≤ c_i for every part. Elements outside all
// declared parts are unconstrained.
class PartitionMatroid : public Matroid {
 public:
  PartitionMatroid(int ground_size, std::vector<std::vector<int>> parts,
                   std::vector<int> capacities);
  int ground_size() const override { return n_; }
  bool IsIndependent(std::span<const int> set) const override;
  int num_parts() const { return static_cast<int>(capacities_.size()); }
  int part_of(int u) const { return part_of_[u]; }  // -1 if unconstrained

 private:
  int n_;
  std::vector<int> part_of_;
  std::vector<int> capacities_;
};

// Free extension: elements ≥ inner ground size are independent of
// everything. rank = inner rank + number of added elements.
class AugmentedMatroid : public Matroid {
 public:
  AugmentedMatroid(std::shared_ptr<const Matroid> inner, int total_size);
  int ground_size() const override { return total_; }
  bool IsIndependent(std::span<const int> set) const override;
  const Matroid& inner() const { return *inner_; }
  int real_size() const { return inner_->ground_size(); }

 private:
  std::shared_ptr<const Matroid> inner_;
  int total_;
};

// Elements u ∉ B with B ∪ {u} independent, ascending. Throws if B is not
// independent.
std::vector<int> FeasibleExtensions(const Matroid& matroid,
                                    std::span<const int> base);

// Some e ∈ b2\b1 with (b1\{b}) ∪ {e} independent, found by an ascending
// scan. Requires |b1| == |b2|, both independent, b ∈ b1\b2. Throws
// std::runtime_error if no candidate works (broken oracle).
int FindExchange(const Matroid& matroid, std::span<const int> b1,
                 std::span<const int> b2, int b);

// Greedy pass over a uniformly shuffled order; the result is a basis.
std::vector<int> RandomBasis(const Matroid& matroid, UniformRng& rng);

// Parses {"kind":"cardinality","r":K} or
// {"kind":"partition","parts":[[...],...],"capacities":[...]}.
std::shared_ptr<Matroid> MatroidFromJson(const nlohmann::json& spec,
                                         int ground_size);

}  // namespace psm

#endif  // PSM_MATROID_H_
