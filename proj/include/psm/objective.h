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

#ifndef PSM_OBJECTIVE_H_
#define PSM_OBJECTIVE_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "psm/ground_set.h"

namespace psm {

// Incremental evaluator of one growing element set. Cursors never remove
// elements: the sampling-based estimators only ever extend their level sets.
class SetCursor {
 public:
  virtual ~SetCursor() = default;

  // f(S) for the current set S.
  virtual double value() const = 0;

  // f(S ∪ {u}) − f(S). Undefined if u is already in S (callers guard).
  virtual double peek_gain(int u) const = 0;

  // S ← S ∪ {u}; returns the realized gain.
  virtual double add(int u) = 0;

  virtual void reset() = 0;

  virtual std::unique_ptr<SetCursor> clone() const = 0;
};

// One agent's valuation oracle f_I : 2^N → [0, λ_I]. Implementations must be
// pure: the same set always evaluates to the same value.
class AgentFunction {
 public:
  virtual ~AgentFunction() = default;

  // `set` is sorted and duplicate-free.
  virtual double value(std::span<const int> set) const = 0;

  // Declared range bound λ_I.
  virtual double range_bound() const = 0;

  // Incremental evaluator; the default tracks the set explicitly and
  // re-queries value() per operation.
  virtual std::unique_ptr<SetCursor> MakeCursor() const;
};

// Agent backed by an arbitrary callable. Used by tests and custom instances.
class FunctionAgent : public AgentFunction {
 public:
  FunctionAgent(std::function<double(std::span<const int>)> oracle,
                double range_bound)
      : oracle_(std::move(oracle)), bound_(range_bound) {}

  double value(std::span<const int> set) const override {
    return oracle_(set);
  }
  double range_bound() const override { return bound_; }

 private:
  std::function<double(std::span<const int>)> oracle_;
  double bound_;
};

// Sum of agent valuations f(S) = Σ_I f_I(S), each f_I in [0, λ].
//
// Identical agents may be stored once with an integer multiplicity; the
// agent count m is the multiplicity total and evaluation weights each
// distinct agent accordingly.
class DecomposableObjective {
 public:
  using CursorFactory = std::function<std::unique_ptr<SetCursor>()>;

  DecomposableObjective(GroundSet ground, double lambda);

  void AddAgent(std::shared_ptr<const AgentFunction> agent,
                int multiplicity = 1);

  // Installs a fast whole-objective cursor implementation (used by the
  // built-in families). Without one, cursors aggregate per-agent cursors.
  void SetCursorFactory(CursorFactory factory) {
    cursor_factory_ = std::move(factory);
  }

  const GroundSet& ground() const { return ground_; }
  int ground_size() const { return ground_.size; }
  double lambda() const { return lambda_; }

  int agent_count() const;  // m = Σ multiplicities
  int distinct_agent_count() const {
    return static_cast<int>(agents_.size());
  }
  int agent_multiplicity(int k) const { return multiplicity_[k]; }
  const AgentFunction& agent(int k) const { return *agents_[k]; }
  std::shared_ptr<const AgentFunction> agent_ptr(int k) const {
    return agents_[k];
  }

  // Σ_I f_I(S). Throws std::out_of_range if S contains an index ≥ n.
  double Evaluate(std::span<const int> set) const;

  // f(S ∪ {u}) − f(S). Throws std::invalid_argument if u ∈ S.
  double MarginalGain(std::span<const int> set, int u) const;

  // Multiplicity-weighted value of distinct agent k.
  double AgentValue(int k, std::span<const int> set) const;

  std::unique_ptr<SetCursor> MakeCursor() const;

  // Neighboring dataset: one copy of distinct agent k removed.
  DecomposableObjective WithoutAgent(int k) const;

  // Single-agent objective (multiplicity 1) sharing agent k.
  DecomposableObjective AgentObjective(int k) const;

 private:
  GroundSet ground_;
  double lambda_;
  std::vector<std::shared_ptr<const AgentFunction>> agents_;
  std::vector<int> multiplicity_;
  CursorFactory cursor_factory_;
};

// Scales every agent by 1/λ so the result is 1-decomposable. Preserves any
// installed fast cursor path. Throws if λ ≤ 0.
DecomposableObjective RescaleUnit(const DecomposableObjective& obj);

// Extends the ground set with `extra` zero-valued elements (indices n..n+extra-1);
// f(S) = f(S ∩ original ground) for every S.
DecomposableObjective PadWithDummies(const DecomposableObjective& obj,
                                     int extra);

struct SubmodularityViolation {
  std::vector<int> s, t;  // S ⊆ T
  int u = -1;             // u ∉ T
  double gap = 0;         // (f(S∪u)−f(S)) − (f(T∪u)−f(T)), negative on violation
};

struct MonotonicityViolation {
  std::vector<int> s;
  int u = -1;
  double drop = 0;  // f(S∪u) − f(S), negative on violation
};

struct SubmodularityReport {
  std::vector<SubmodularityViolation> submodularity;
  std::vector<MonotonicityViolation> monotonicity;
  bool exhaustive = false;
  long long checks = 0;

  bool submodular() const { return submodularity.empty(); }
  bool monotone() const { return monotonicity.empty(); }
};

enum class CheckMode { kExhaustive, kSampled };

// Scans for diminishing-returns and monotonicity violations (tolerance 1e-9).
// Exhaustive mode requires n ≤ 14; sampled mode draws `trials` random triples.
SubmodularityReport CheckSubmodularMonotone(const DecomposableObjective& obj,
                                            CheckMode mode, int trials = 1000,
                                            uint64_t seed = 1);

}  // namespace psm

#endif  // PSM_OBJECTIVE_H_
