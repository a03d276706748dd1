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

#include "psm/objective.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "psm/element_set.h"
#include "psm/rng.h"

namespace psm {

namespace {

constexpr double kTol = 1e-9;

// Fallback cursor: tracks the set explicitly, one oracle call per operation.
class GenericCursor : public SetCursor {
 public:
  explicit GenericCursor(const AgentFunction* fn) : fn_(fn) {
    value_ = fn_->value(set_);
  }

  double value() const override { return value_; }

  double peek_gain(int u) const override {
    return fn_->value(SetWith(set_, u)) - value_;
  }

  double add(int u) override {
    SetInsert(set_, u);
    double next = fn_->value(set_);
    double gain = next - value_;
    value_ = next;
    return gain;
  }

  void reset() override {
    set_.clear();
    value_ = fn_->value(set_);
  }

  std::unique_ptr<SetCursor> clone() const override {
    return std::make_unique<GenericCursor>(*this);
  }

 private:
  const AgentFunction* fn_;
  std::vector<int> set_;
  double value_;
};

// Weighted sum of per-agent cursors.
class AggregateCursor : public SetCursor {
 public:
  AggregateCursor(std::vector<std::unique_ptr<SetCursor>> children,
                  std::vector<double> weights)
      : children_(std::move(children)), weights_(std::move(weights)) {
    recompute();
  }

  double value() const override { return value_; }

  double peek_gain(int u) const override {
    double g = 0;
    for (size_t k = 0; k < children_.size(); ++k) {
      g += weights_[k] * children_[k]->peek_gain(u);
    }
    return g;
  }

  double add(int u) override {
    double g = 0;
    for (size_t k = 0; k < children_.size(); ++k) {
      g += weights_[k] * children_[k]->add(u);
    }
    value_ += g;
    return g;
  }

  void reset() override {
    for (auto& c : children_) c->reset();
    recompute();
  }

  std::unique_ptr<SetCursor> clone() const override {
    std::vector<std::unique_ptr<SetCursor>> copies;
    copies.reserve(children_.size());
    for (const auto& c : children_) copies.push_back(c->clone());
    return std::make_unique<AggregateCursor>(std::move(copies), weights_);
  }

 private:
  void recompute() {
    value_ = 0;
    for (size_t k = 0; k < children_.size(); ++k) {
      value_ += weights_[k] * children_[k]->value();
    }
  }

  std::vector<std::unique_ptr<SetCursor>> children_;
  std::vector<double> weights_;
  double value_ = 0;
};

class ScaledAgent : public AgentFunction {
 public:
  ScaledAgent(std::shared_ptr<const AgentFunction> inner, double factor)
      : inner_(std::move(inner)), factor_(factor) {}

  double value(std::span<const int> set) const override {
    return factor_ * inner_->value(set);
  }
  double range_bound() const override {
    return factor_ * inner_->range_bound();
  }
  std::unique_ptr<SetCursor> MakeCursor() const override;

 private:
  std::shared_ptr<const AgentFunction> inner_;
  double factor_;
};

class ScaledCursor : public SetCursor {
 public:
  ScaledCursor(std::unique_ptr<SetCursor> inner, double factor)
      : inner_(std::move(inner)), factor_(factor) {}

  double value() const override { return factor_ * inner_->value(); }
  double peek_gain(int u) const override {
    return factor_ * inner_->peek_gain(u);
  }
  double add(int u) override { return factor_ * inner_->add(u); }
  void reset() override { inner_->reset(); }
  std::unique_ptr<SetCursor> clone() const override {
    return std::make_unique<ScaledCursor>(inner_->clone(), factor_);
  }

 private:
  std::unique_ptr<SetCursor> inner_;
  double factor_;
};

std::unique_ptr<SetCursor> ScaledAgent::MakeCursor() const {
  return std::make_unique<ScaledCursor>(inner_->MakeCursor(), factor_);
}

// Forwards to an inner agent after discarding dummy indices ≥ real_size.
class DummyBlindAgent : public AgentFunction {
 public:
  DummyBlindAgent(std::shared_ptr<const AgentFunction> inner, int real_size)
      : inner_(std::move(inner)), real_size_(real_size) {}

  double value(std::span<const int> set) const override {
    size_t real_len = 0;
    while (real_len < set.size() && set[real_len] < real_size_) ++real_len;
    return inner_->value(set.subspan(0, real_len));
  }
  double range_bound() const override { return inner_->range_bound(); }
  std::unique_ptr<SetCursor> MakeCursor() const override;

 private:
  std::shared_ptr<const AgentFunction> inner_;
  int real_size_;
};

class DummyBlindCursor : public SetCursor {
 public:
  DummyBlindCursor(std::unique_ptr<SetCursor> inner, int real_size)
      : inner_(std::move(inner)), real_size_(real_size) {}

  double value() const override { return inner_->value(); }
  double peek_gain(int u) const override {
    return u < real_size_ ? inner_->peek_gain(u) : 0.0;
  }
  double add(int u) override {
    return u < real_size_ ? inner_->add(u) : 0.0;
  }
  void reset() override { inner_->reset(); }
  std::unique_ptr<SetCursor> clone() const override {
    return std::make_unique<DummyBlindCursor>(inner_->clone(), real_size_);
  }

 private:
  std::unique_ptr<SetCursor> inner_;
  int real_size_;
};

std::unique_ptr<SetCursor> DummyBlindAgent::MakeCursor() const {
  return std::make_unique<DummyBlindCursor>(inner_->MakeCursor(), real_size_);
}

}  // namespace

void GroundSet::Validate() const {
  if (size < 1) throw std::invalid_argument("ground set must be non-empty");
  if (!labels.empty() && static_cast<int>(labels.size()) != size) {
    throw std::invalid_argument("labels must have exactly one entry per element");
  }
  if (dummy_from && (*dummy_from < 0 || *dummy_from > size)) {
    throw std::invalid_argument("dummy_from out of range");
  }
}

std::string GroundSet::label(int u) const {
  if (!labels.empty()) return labels[u];
  return std::to_string(u);
}

std::unique_ptr<SetCursor> AgentFunction::MakeCursor() const {
  return std::make_unique<GenericCursor>(this);
}

DecomposableObjective::DecomposableObjective(GroundSet ground, double lambda)
    : ground_(std::move(ground)), lambda_(lambda) {
  ground_.Validate();
  if (lambda_ <= 0) throw std::invalid_argument("lambda must be positive");
}

void DecomposableObjective::AddAgent(
    std::shared_ptr<const AgentFunction> agent, int multiplicity) {
  if (!agent) throw std::invalid_argument("null agent");
  if (multiplicity < 1) throw std::invalid_argument("multiplicity must be >= 1");
  agents_.push_back(std::move(agent));
  multiplicity_.push_back(multiplicity);
}

int DecomposableObjective::agent_count() const {
  int m = 0;
  for (int mult : multiplicity_) m += mult;
  return m;
}

double DecomposableObjective::Evaluate(std::span<const int> set) const {
  for (int u : set) {
    if (u < 0 || u >= ground_.size) {
      throw std::out_of_range("element index " + std::to_string(u) +
                              " outside ground set of size " +
                              std::to_string(ground_.size));
    }
  }
  double total = 0;
  for (size_t k = 0; k < agents_.size(); ++k) {
    total += multiplicity_[k] * agents_[k]->value(set);
  }
  return total;
}

double DecomposableObjective::MarginalGain(std::span<const int> set,
                                           int u) const {
  if (SetContains(set, u)) {
    throw std::invalid_argument("marginal gain of an element already in the set");
  }
  return Evaluate(SetWith(set, u)) - Evaluate(set);
}

double DecomposableObjective::AgentValue(int k, std::span<const int> set) const {
  return multiplicity_[k] * agents_[k]->value(set);
}

std::unique_ptr<SetCursor> DecomposableObjective::MakeCursor() const {
  if (cursor_factory_) return cursor_factory_();
  std::vector<std::unique_ptr<SetCursor>> children;
  std::vector<double> weights;
  children.reserve(agents_.size());
  weights.reserve(agents_.size());
  for (size_t k = 0; k < agents_.size(); ++k) {
    children.push_back(agents_[k]->MakeCursor());
    weights.push_back(multiplicity_[k]);
  }
  return std::make_unique<AggregateCursor>(std::move(children),
                                           std::move(weights));
}

DecomposableObjective DecomposableObjective::WithoutAgent(int k) const {
  if (k < 0 || k >= distinct_agent_count()) {
    throw std::out_of_range("agent index");
  }
  DecomposableObjective out(ground_, lambda_);
  for (int j = 0; j < distinct_agent_count(); ++j) {
    int mult = multiplicity_[j] - (j == k ? 1 : 0);
    if (mult > 0) out.AddAgent(agents_[j], mult);
  }
  if (out.distinct_agent_count() == 0) {
    throw std::invalid_argument("cannot remove the last agent");
  }
  return out;
}

DecomposableObjective DecomposableObjective::AgentObjective(int k) const {
  if (k < 0 || k >= distinct_agent_count()) {
    throw std::out_of_range("agent index");
  }
  DecomposableObjective out(ground_, lambda_);
  out.AddAgent(agents_[k], 1);
  return out;
}

DecomposableObjective RescaleUnit(const DecomposableObjective& obj) {
  if (obj.lambda() <= 0) throw std::invalid_argument("lambda must be positive");
  const double factor = 1.0 / obj.lambda();
  DecomposableObjective out(obj.ground(), 1.0);
  for (int k = 0; k < obj.distinct_agent_count(); ++k) {
    out.AddAgent(std::make_shared<ScaledAgent>(obj.agent_ptr(k), factor),
                 obj.agent_multiplicity(k));
  }
  // Keep any fast cursor path, scaled. The inner objective is copied so the
  // factory stays valid when the source goes away.
  out.SetCursorFactory([inner = obj, factor]() {
    return std::make_unique<ScaledCursor>(inner.MakeCursor(), factor);
  });
  return out;
}

DecomposableObjective PadWithDummies(const DecomposableObjective& obj,
                                     int extra) {
  if (extra < 0) throw std::invalid_argument("extra must be >= 0");
  const int real = obj.ground_size();
  GroundSet ground;
  ground.size = real + extra;
  ground.dummy_from = real;
  DecomposableObjective out(std::move(ground), obj.lambda());
  for (int k = 0; k < obj.distinct_agent_count(); ++k) {
    out.AddAgent(std::make_shared<DummyBlindAgent>(obj.agent_ptr(k), real),
                 obj.agent_multiplicity(k));
  }
  out.SetCursorFactory([inner = obj, real]() {
    return std::make_unique<DummyBlindCursor>(inner.MakeCursor(), real);
  });
  return out;
}

namespace {

// Values of f on every subset of [0, n), indexed by bitmask.
std::vector<double> FullValueTable(const DecomposableObjective& obj, int n) {
  std::vector<double> table(size_t{1} << n);
  std::vector<int> set;
  for (uint32_t mask = 0; mask < table.size(); ++mask) {
    set.clear();
    for (int u = 0; u < n; ++u) {
      if (mask & (1u << u)) set.push_back(u);
    }
    table[mask] = obj.Evaluate(set);
  }
  return table;
}

}  // namespace

SubmodularityReport CheckSubmodularMonotone(const DecomposableObjective& obj,
                                            CheckMode mode, int trials,
                                            uint64_t seed) {
  SubmodularityReport report;
  const int n = obj.ground_size();
  constexpr int kMaxViolations = 16;

  if (mode == CheckMode::kExhaustive) {
    if (n > 14) {
      throw std::invalid_argument("exhaustive check requires n <= 14");
    }
    report.exhaustive = true;
    const std::vector<double> table = FullValueTable(obj, n);
    const uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (uint32_t t = 0; t <= full; ++t) {
      // Monotonicity: adding any u to T never decreases f.
      for (int u = 0; u < n; ++u) {
        if (t & (1u << u)) continue;
        ++report.checks;
        double drop = table[t | (1u << u)] - table[t];
        if (drop < -kTol &&
            static_cast<int>(report.monotonicity.size()) < kMaxViolations) {
          report.monotonicity.push_back({MaskToSet(t), u, drop});
        }
      }
      // Diminishing returns against every subset S of T.
      for (uint32_t s = t;; s = (s - 1) & t) {
        if (s != t) {
          for (int u = 0; u < n; ++u) {
            if (t & (1u << u)) continue;
            ++report.checks;
            double gap = (table[s | (1u << u)] - table[s]) -
                         (table[t | (1u << u)] - table[t]);
            if (gap < -kTol &&
                static_cast<int>(report.submodularity.size()) < kMaxViolations) {
              report.submodularity.push_back({MaskToSet(s), MaskToSet(t), u, gap});
            }
          }
        }
        if (s == 0) break;
      }
    }
    return report;
  }

  UniformRng rng(seed);
  for (int trial = 0; trial < trials; ++trial) {
    // Random S ⊆ T, u ∉ T.
    std::vector<int> t_set, s_set;
    uint64_t t_bits = 0;
    for (int v = 0; v < n; ++v) {
      if (rng.next_double() < 0.5) {
        t_set.push_back(v);
        t_bits |= uint64_t{1} << v;
        if (rng.next_double() < 0.5) s_set.push_back(v);
      }
    }
    if (t_set.size() == static_cast<size_t>(n)) continue;
    int u;
    do {
      u = static_cast<int>(rng.next_index(n));
    } while (t_bits & (uint64_t{1} << u));
    ++report.checks;
    double ft = obj.Evaluate(t_set);
    double ftu = obj.Evaluate(SetWith(t_set, u));
    double fs = obj.Evaluate(s_set);
    double fsu = obj.Evaluate(SetWith(s_set, u));
    double gap = (fsu - fs) - (ftu - ft);
    if (gap < -kTol &&
        static_cast<int>(report.submodularity.size()) < kMaxViolations) {
      report.submodularity.push_back({s_set, t_set, u, gap});
    }
    double drop = ftu - ft;
    if (drop < -kTol &&
        static_cast<int>(report.monotonicity.size()) < kMaxViolations) {
      report.monotonicity.push_back({t_set, u, drop});
    }
  }
  return report;
}

}  // namespace psm
