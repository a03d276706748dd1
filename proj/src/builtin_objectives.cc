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

#include "psm/builtin_objectives.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "psm/element_set.h"

namespace psm {

namespace {

// Shared geometry of one facility-location instance: normalized distances
// from every location to every distinct pickup, plus pickup multiplicities.
struct FacilityData {
  int num_locations = 0;
  int num_pickups = 0;               // distinct pickups
  std::vector<double> distance;      // [u * num_pickups + p]
  std::vector<double> weight;        // pickup multiplicities as doubles

  const double* row(int u) const { return &distance[size_t(u) * num_pickups]; }
};

class FacilityAgent : public AgentFunction {
 public:
  FacilityAgent(std::shared_ptr<const FacilityData> data, int pickup)
      : data_(std::move(data)), pickup_(pickup) {}

  double value(std::span<const int> set) const override {
    if (set.empty()) return 0.0;
    double best = 1.0;
    for (int u : set) {
      best = std::min(best, data_->distance[size_t(u) * data_->num_pickups + pickup_]);
    }
    return 1.0 - best;
  }

  double range_bound() const override { return 1.0; }

 private:
  std::shared_ptr<const FacilityData> data_;
  int pickup_;
};

// Dense cursor over the whole facility objective: one running minimum
// distance per pickup.
class FacilityCursor : public SetCursor {
 public:
  explicit FacilityCursor(std::shared_ptr<const FacilityData> data)
      : data_(std::move(data)), min_dist_(data_->num_pickups, 1.0) {}

  double value() const override { return value_; }

  double peek_gain(int u) const override {
    const double* d = data_->row(u);
    const int m = data_->num_pickups;
    double gain = 0;
    if (empty_) {
      for (int p = 0; p < m; ++p) gain += data_->weight[p] * (1.0 - d[p]);
    } else {
      for (int p = 0; p < m; ++p) {
        double improve = min_dist_[p] - d[p];
        if (improve > 0) gain += data_->weight[p] * improve;
      }
    }
    return gain;
  }

  double add(int u) override {
    const double* d = data_->row(u);
    const int m = data_->num_pickups;
    double gain = 0;
    if (empty_) {
      for (int p = 0; p < m; ++p) {
        gain += data_->weight[p] * (1.0 - d[p]);
        min_dist_[p] = d[p];
      }
      empty_ = false;
    } else {
      for (int p = 0; p < m; ++p) {
        double improve = min_dist_[p] - d[p];
        if (improve > 0) {
          gain += data_->weight[p] * improve;
          min_dist_[p] = d[p];
        }
      }
    }
    value_ += gain;
    return gain;
  }

  void reset() override {
    std::fill(min_dist_.begin(), min_dist_.end(), 1.0);
    value_ = 0;
    empty_ = true;
  }

  std::unique_ptr<SetCursor> clone() const override {
    return std::make_unique<FacilityCursor>(*this);
  }

 private:
  std::shared_ptr<const FacilityData> data_;
  std::vector<double> min_dist_;
  double value_ = 0;
  bool empty_ = true;
};

double RawL1(const Point& a, const Point& b) {
  return std::abs(a.lat - b.lat) + std::abs(a.lon - b.lon);
}

}  // namespace

int PickupDataset::total_count() const {
  if (multiplicities.empty()) return static_cast<int>(points.size());
  int total = 0;
  for (int m : multiplicities) total += m;
  return total;
}

double ManhattanDistance(const Point& l, const Point& p, double c) {
  if (c <= 0) throw std::invalid_argument("normalization constant must be positive");
  double d = RawL1(l, p) / c;
  if (d > 1.0 + 1e-12) {
    throw std::invalid_argument("normalization constant too small: distance > 1");
  }
  return std::min(d, 1.0);
}

DecomposableObjective BuildFacilityLocation(std::span<const Point> locations,
                                            const PickupDataset& pickups) {
  if (locations.empty()) throw std::invalid_argument("no locations");
  if (pickups.points.empty()) throw std::invalid_argument("no pickups");
  if (!pickups.multiplicities.empty() &&
      pickups.multiplicities.size() != pickups.points.size()) {
    throw std::invalid_argument("multiplicities must match points");
  }

  double c = pickups.normalization;
  if (c <= 0) {
    for (const Point& l : locations) {
      for (const Point& p : pickups.points) c = std::max(c, RawL1(l, p));
    }
    if (c <= 0) c = 1.0;  // all points coincide
  }

  auto data = std::make_shared<FacilityData>();
  data->num_locations = static_cast<int>(locations.size());
  data->num_pickups = static_cast<int>(pickups.points.size());
  data->distance.resize(size_t(data->num_locations) * data->num_pickups);
  data->weight.resize(data->num_pickups);
  for (int p = 0; p < data->num_pickups; ++p) {
    data->weight[p] =
        pickups.multiplicities.empty() ? 1.0 : pickups.multiplicities[p];
  }
  for (int u = 0; u < data->num_locations; ++u) {
    for (int p = 0; p < data->num_pickups; ++p) {
      data->distance[size_t(u) * data->num_pickups + p] =
          ManhattanDistance(locations[u], pickups.points[p], c);
    }
  }

  GroundSet ground;
  ground.size = data->num_locations;
  DecomposableObjective obj(std::move(ground), 1.0);
  for (int p = 0; p < data->num_pickups; ++p) {
    int mult = pickups.multiplicities.empty() ? 1 : pickups.multiplicities[p];
    obj.AddAgent(std::make_shared<FacilityAgent>(data, p), mult);
  }
  obj.SetCursorFactory(
      [data]() { return std::make_unique<FacilityCursor>(data); });
  return obj;
}

class CoverageCursor : public SetCursor {
 public:
  explicit CoverageCursor(const WeightedCoverageAgent* agent)
      : agent_(agent), covered_(agent->blocks_, 0) {}

  double value() const override { return value_; }

  double peek_gain(int u) const override {
    const uint64_t* mask = &agent_->element_masks_[size_t(u) * agent_->blocks_];
    double gain = 0;
    for (int b = 0; b < agent_->blocks_; ++b) {
      uint64_t fresh = mask[b] & ~covered_[b];
      while (fresh) {
        int bit = std::countr_zero(fresh);
        gain += agent_->item_weights_[b * 64 + bit];
        fresh &= fresh - 1;
      }
    }
    return gain;
  }

  double add(int u) override {
    const uint64_t* mask = &agent_->element_masks_[size_t(u) * agent_->blocks_];
    double gain = 0;
    for (int b = 0; b < agent_->blocks_; ++b) {
      uint64_t fresh = mask[b] & ~covered_[b];
      covered_[b] |= mask[b];
      while (fresh) {
        int bit = std::countr_zero(fresh);
        gain += agent_->item_weights_[b * 64 + bit];
        fresh &= fresh - 1;
      }
    }
    value_ += gain;
    return gain;
  }

  void reset() override {
    std::fill(covered_.begin(), covered_.end(), 0);
    value_ = 0;
  }

  std::unique_ptr<SetCursor> clone() const override {
    return std::make_unique<CoverageCursor>(*this);
  }

 private:
  const WeightedCoverageAgent* agent_;
  std::vector<uint64_t> covered_;
  double value_ = 0;
};

WeightedCoverageAgent::WeightedCoverageAgent(
    int ground_size, const std::vector<std::vector<int>>& element_items,
    std::vector<double> item_weights)
    : item_weights_(std::move(item_weights)) {
  if (static_cast<int>(element_items.size()) != ground_size) {
    throw std::invalid_argument("element_items must have one entry per element");
  }
  const int items = static_cast<int>(item_weights_.size());
  blocks_ = (items + 63) / 64;
  if (blocks_ == 0) blocks_ = 1;
  item_weights_.resize(size_t(blocks_) * 64, 0.0);
  element_masks_.assign(size_t(ground_size) * blocks_, 0);
  std::vector<uint64_t> reach(blocks_, 0);
  for (int u = 0; u < ground_size; ++u) {
    for (int item : element_items[u]) {
      if (item < 0 || item >= items) {
        throw std::invalid_argument("covered item outside the universe");
      }
      element_masks_[size_t(u) * blocks_ + item / 64] |= uint64_t{1} << (item % 64);
      reach[item / 64] |= uint64_t{1} << (item % 64);
    }
  }
  for (int b = 0; b < blocks_; ++b) {
    uint64_t bits = reach[b];
    while (bits) {
      int bit = std::countr_zero(bits);
      bound_ += item_weights_[b * 64 + bit];
      bits &= bits - 1;
    }
  }
}

double WeightedCoverageAgent::value(std::span<const int> set) const {
  std::vector<uint64_t> covered(blocks_, 0);
  for (int u : set) {
    for (int b = 0; b < blocks_; ++b) {
      covered[b] |= element_masks_[size_t(u) * blocks_ + b];
    }
  }
  double total = 0;
  for (int b = 0; b < blocks_; ++b) {
    uint64_t bits = covered[b];
    while (bits) {
      int bit = std::countr_zero(bits);
      total += item_weights_[b * 64 + bit];
      bits &= bits - 1;
    }
  }
  return total;
}

std::unique_ptr<SetCursor> WeightedCoverageAgent::MakeCursor() const {
  return std::make_unique<CoverageCursor>(this);
}

DecomposableObjective BuildCoverage(
    int universe_size,
    const std::vector<std::vector<std::vector<int>>>& covered) {
  if (universe_size < 1) throw std::invalid_argument("empty universe");
  if (covered.empty()) throw std::invalid_argument("no agents");
  const size_t n = covered.front().size();
  GroundSet ground;
  ground.size = static_cast<int>(n);
  DecomposableObjective obj(std::move(ground), 1.0);
  for (const auto& agent_items : covered) {
    if (agent_items.size() != n) {
      throw std::invalid_argument("agents must cover the same ground set");
    }
    std::vector<bool> reachable(universe_size, false);
    int reach_count = 0;
    for (const auto& items : agent_items) {
      for (int item : items) {
        if (item < 0 || item >= universe_size) {
          throw std::invalid_argument("covered item outside the universe");
        }
        if (!reachable[item]) {
          reachable[item] = true;
          ++reach_count;
        }
      }
    }
    if (reach_count == 0) {
      throw std::invalid_argument("agent has an empty universe");
    }
    std::vector<double> weights(universe_size, 1.0 / reach_count);
    obj.AddAgent(std::make_shared<WeightedCoverageAgent>(
        static_cast<int>(n), agent_items, std::move(weights)));
  }
  return obj;
}

namespace {

class IndicatorAgent : public AgentFunction {
 public:
  IndicatorAgent(int element, double weight)
      : element_(element), weight_(weight) {}

  double value(std::span<const int> set) const override {
    return SetContains(set, element_) ? weight_ : 0.0;
  }
  double range_bound() const override { return weight_; }

 private:
  int element_;
  double weight_;
};

}  // namespace

DecomposableObjective BuildModular(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("no elements");
  double lambda = 0;
  for (double v : values) {
    if (v < 0) throw std::invalid_argument("modular values must be non-negative");
    lambda = std::max(lambda, v);
  }
  if (lambda <= 0) throw std::invalid_argument("all modular values are zero");
  GroundSet ground;
  ground.size = static_cast<int>(values.size());
  DecomposableObjective obj(std::move(ground), lambda);
  for (size_t u = 0; u < values.size(); ++u) {
    obj.AddAgent(std::make_shared<IndicatorAgent>(static_cast<int>(u), values[u]));
  }
  return obj;
}

DecomposableObjective BuildDirectedCut(
    int n, const std::vector<std::tuple<int, int, double>>& edges) {
  if (n < 1) throw std::invalid_argument("empty ground set");
  double total = 0;
  for (const auto& [from, to, w] : edges) {
    if (from < 0 || from >= n || to < 0 || to >= n) {
      throw std::invalid_argument("edge endpoint outside the ground set");
    }
    if (w < 0) throw std::invalid_argument("edge weights must be non-negative");
    total += w;
  }
  if (total <= 0) throw std::invalid_argument("graph has no edge weight");
  auto oracle = [n, edges, total](std::span<const int> set) {
    double cut = 0;
    for (const auto& [from, to, w] : edges) {
      if (SetContains(set, from) && !SetContains(set, to)) cut += w;
    }
    return cut / total;
  };
  GroundSet ground;
  ground.size = n;
  DecomposableObjective obj(std::move(ground), 1.0);
  obj.AddAgent(std::make_shared<FunctionAgent>(oracle, 1.0));
  return obj;
}

}  // namespace psm
