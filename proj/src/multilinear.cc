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

#include "psm/multilinear.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "psm/rng.h"

namespace psm {

double ExactMultilinear(const DecomposableObjective& obj,
                        std::span<const double> x) {
  const int n = obj.ground_size();
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("point dimension mismatch");
  }
  if (n > 20) {
    throw std::invalid_argument("exact multilinear extension requires n <= 20");
  }
  for (double v : x) {
    if (v < 0 || v > 1) throw std::invalid_argument("coordinates must be in [0,1]");
  }
  auto cursor = obj.MakeCursor();
  double total = 0;
  const uint32_t limit = uint32_t{1} << n;
  for (uint32_t mask = 0; mask < limit; ++mask) {
    double prob = 1;
    for (int u = 0; u < n; ++u) {
      prob *= (mask & (uint32_t{1} << u)) ? x[u] : 1.0 - x[u];
    }
    if (prob == 0) continue;
    cursor->reset();
    for (int u = 0; u < n; ++u) {
      if (mask & (uint32_t{1} << u)) cursor->add(u);
    }
    total += prob * cursor->value();
  }
  return total;
}

ThresholdSamples::ThresholdSamples(int n, int64_t s, uint64_t seed)
    : n_(n), s_(s), seed_(seed) {
  if (n_ < 1) throw std::invalid_argument("empty ground set");
  if (s_ < 1) throw std::invalid_argument("sample count must be >= 1");
  thr_.resize(static_cast<size_t>(s_) * n_);
  UniformRng rng(seed);
  for (double& v : thr_) v = rng.next_double();
}

std::vector<int> ThresholdSamples::LevelSet(int64_t j,
                                            std::span<const double> x) const {
  if (j < 0 || j >= s_) throw std::out_of_range("sample index");
  std::vector<int> set;
  for (int u = 0; u < n_; ++u) {
    if (thr_[j * n_ + u] < x[u]) set.push_back(u);
  }
  return set;
}

double EstimateG(const DecomposableObjective& obj, const ThresholdSamples& ts,
                 std::span<const double> x, long long* oracle_calls) {
  if (ts.n() != obj.ground_size()) {
    throw std::invalid_argument("threshold dimension mismatch");
  }
  auto cursor = obj.MakeCursor();
  double total = 0;
  for (int64_t j = 0; j < ts.s(); ++j) {
    cursor->reset();
    for (int u = 0; u < ts.n(); ++u) {
      if (ts.threshold(j, u) < x[u]) cursor->add(u);
    }
    total += cursor->value();
    if (oracle_calls) ++*oracle_calls;
  }
  return total / static_cast<double>(ts.s());
}

double DefinitionalGain(const DecomposableObjective& obj,
                        const ThresholdSamples& ts, std::span<const double> y,
                        int u, double new_yu, long long* oracle_calls) {
  std::vector<double> moved(y.begin(), y.end());
  moved[u] = new_yu;
  return EstimateG(obj, ts, moved, oracle_calls) -
         EstimateG(obj, ts, y, oracle_calls);
}

GainEstimator::GainEstimator(const DecomposableObjective& obj,
                             const ThresholdSamples& ts)
    : ts_(ts), y_(ts.n(), 0.0) {
  if (ts.n() != obj.ground_size()) {
    throw std::invalid_argument("threshold dimension mismatch");
  }
  const int64_t s = ts.s();
  const int n = ts.n();
  cursors_.reserve(s);
  auto prototype = obj.MakeCursor();
  for (int64_t j = 0; j < s; ++j) cursors_.push_back(prototype->clone());

  sorted_ids_.resize(static_cast<size_t>(n) * s);
  sorted_thr_.resize(static_cast<size_t>(n) * s);
  std::vector<int32_t> order(s);
  for (int u = 0; u < n; ++u) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
      double ta = ts.threshold(a, u), tb = ts.threshold(b, u);
      return ta != tb ? ta < tb : a < b;
    });
    for (int64_t k = 0; k < s; ++k) {
      sorted_ids_[u * s + k] = order[k];
      sorted_thr_[u * s + k] = ts.threshold(order[k], u);
    }
  }
}

double GainEstimator::WindowSum(int u, double lo, double hi) const {
  if (hi <= lo) return 0.0;
  const int64_t s = ts_.s();
  const double* thr = &sorted_thr_[static_cast<size_t>(u) * s];
  const int32_t* ids = &sorted_ids_[static_cast<size_t>(u) * s];
  const int64_t begin = std::lower_bound(thr, thr + s, lo) - thr;
  const int64_t end = std::lower_bound(thr, thr + s, hi) - thr;
  double sum = 0;
  for (int64_t k = begin; k < end; ++k) {
    sum += cursors_[ids[k]]->peek_gain(u);
    ++oracle_calls_;
  }
  return sum / static_cast<double>(s);
}

double GainEstimator::MonotoneTarget(int u, double eta) const {
  return std::min(y_[u] + eta, 1.0);
}

double GainEstimator::MeasuredTarget(int u, double eta) const {
  return y_[u] + eta * (1.0 - y_[u]);
}

double GainEstimator::GainMonotone(int u, double eta) const {
  return WindowSum(u, y_[u], MonotoneTarget(u, eta));
}

double GainEstimator::GainMeasured(int u, double eta) const {
  return WindowSum(u, y_[u], MeasuredTarget(u, eta));
}

void GainEstimator::ApplyPick(int u, double new_yu) {
  if (new_yu < y_[u]) throw std::invalid_argument("coordinates never decrease");
  const int64_t s = ts_.s();
  const double* thr = &sorted_thr_[static_cast<size_t>(u) * s];
  const int32_t* ids = &sorted_ids_[static_cast<size_t>(u) * s];
  const int64_t begin = std::lower_bound(thr, thr + s, y_[u]) - thr;
  const int64_t end = std::lower_bound(thr, thr + s, new_yu) - thr;
  for (int64_t k = begin; k < end; ++k) {
    cursors_[ids[k]]->add(u);
    ++oracle_calls_;
  }
  y_[u] = new_yu;
}

double GainEstimator::CurrentG() const {
  double total = 0;
  for (const auto& cursor : cursors_) {
    total += cursor->value();
    ++oracle_calls_;
  }
  return total / static_cast<double>(ts_.s());
}

namespace {

int64_t CeilSamples(double value) {
  if (!(value >= 0) || value > 9e18) {
    throw std::invalid_argument("sample formula out of range");
  }
  return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(value)));
}

void ValidateScheduleArgs(int r, int T, int n, double gamma) {
  if (r < 1 || T < 1 || n < 1) {
    throw std::invalid_argument("r, T, n must be positive");
  }
  if (!(gamma > 0) || gamma > 1) {
    throw std::invalid_argument("gamma must be in (0,1]");
  }
}

}  // namespace

int64_t SamplesMonotone(int r, int T, int n, double gamma) {
  ValidateScheduleArgs(r, T, n, gamma);
  const double t4 = std::pow(static_cast<double>(T), 4);
  return CeilSamples(6.0 * r * r * t4 * std::log(n / gamma));
}

int64_t SamplesNonmonotone(int r, int T, int n, double gamma) {
  ValidateScheduleArgs(r, T, n, gamma);
  const double t7 = std::pow(static_cast<double>(T), 7);
  return CeilSamples(48.0 * r * r * r * t7 * std::log(n / gamma));
}

}  // namespace psm
