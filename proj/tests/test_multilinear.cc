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

#include <cmath>

#include "gtest/gtest.h"
#include "psm/algorithms.h"
#include "psm/element_set.h"
#include "test_util.h"

namespace psm {
namespace {

std::vector<double> Indicator(int n, std::span<const int> set) {
  std::vector<double> x(n, 0.0);
  for (int u : set) x[u] = 1.0;
  return x;
}

TEST(ExactMultilinear, CubeVertexEqualsSetValue) {
  DecomposableObjective obj = test::RandomCoverage(6, 2, 6, 41);
  const std::vector<int> s{0, 3, 5};
  EXPECT_NEAR(ExactMultilinear(obj, Indicator(6, s)), obj.Evaluate(s), 1e-12);
}

TEST(ExactMultilinear, SingleElementLinearity) {
  GroundSet ground;
  ground.size = 1;
  DecomposableObjective obj(std::move(ground), 1.0);
  obj.AddAgent(std::make_shared<FunctionAgent>(
      [](std::span<const int> s) { return s.empty() ? 0.0 : 1.0; }, 1.0));
  EXPECT_NEAR(ExactMultilinear(obj, std::vector<double>{0.5}), 0.5, 1e-12);
}

TEST(ExactMultilinear, MatchesIndependentSamplingOracle) {
  DecomposableObjective obj = test::RandomCoverage(6, 3, 7, 43);
  UniformRng rng(19);
  std::vector<double> x(6);
  for (double& v : x) v = rng.next_double();
  const double exact = ExactMultilinear(obj, x);

  const int draws = 1000000;
  double sum = 0, sum_sq = 0;
  std::vector<int> set;
  for (int i = 0; i < draws; ++i) {
    set.clear();
    for (int u = 0; u < 6; ++u) {
      if (rng.next_double() < x[u]) set.push_back(u);
    }
    const double v = obj.Evaluate(set);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / draws;
  const double var = (sum_sq - draws * mean * mean) / (draws - 1);
  const double sigma = std::sqrt(var / draws);
  EXPECT_NEAR(mean, exact, 3 * sigma + 1e-9);
}

TEST(ExactMultilinear, RefusesLargeGround) {
  DecomposableObjective obj = test::RandomCoverage(21, 1, 4, 2);
  EXPECT_THROW(ExactMultilinear(obj, std::vector<double>(21, 0.5)),
               std::invalid_argument);
}

TEST(ThresholdSamples, DeterministicPerSeed) {
  ThresholdSamples a(5, 100, 9), b(5, 100, 9);
  for (int j = 0; j < 100; ++j) {
    for (int u = 0; u < 5; ++u) {
      EXPECT_EQ(a.threshold(j, u), b.threshold(j, u));
    }
  }
  ThresholdSamples c(5, 100, 10);
  bool any_diff = false;
  for (int j = 0; j < 100 && !any_diff; ++j) {
    for (int u = 0; u < 5; ++u) {
      if (a.threshold(j, u) != c.threshold(j, u)) any_diff = true;
    }
  }
  EXPECT_TRUE(any_diff);
}

TEST(ThresholdSamples, UniformMeanAndRange) {
  ThresholdSamples ts(2, 100000, 4);
  double sum = 0;
  for (int64_t j = 0; j < ts.s(); ++j) {
    const double v = ts.threshold(j, 1);
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
    sum += v;
  }
  EXPECT_NEAR(sum / ts.s(), 0.5, 0.005);
}

TEST(LevelSet, VertexAndExtremes) {
  ThresholdSamples ts(5, 50, 3);
  const std::vector<double> ones(5, 1.0), zeros(5, 0.0);
  for (int64_t j = 0; j < 10; ++j) {
    EXPECT_EQ(ts.LevelSet(j, ones), (std::vector<int>{0, 1, 2, 3, 4}));
    EXPECT_TRUE(ts.LevelSet(j, zeros).empty());
  }
  const std::vector<int> s{1, 4};
  for (int64_t j = 0; j < 10; ++j) {
    EXPECT_EQ(ts.LevelSet(j, Indicator(5, s)), s);
  }
}

TEST(EstimateG, VertexExactness) {
  DecomposableObjective obj = test::RandomFacility(5, 4, 7);
  for (uint64_t seed : {1u, 2u, 99u}) {
    ThresholdSamples ts(5, 37, seed);
    const std::vector<int> s{0, 2};
    EXPECT_NEAR(EstimateG(obj, ts, Indicator(5, s)), obj.Evaluate(s), 1e-12);
  }
}

TEST(EstimateG, CloseToExactAtLargeSampleCount) {
  DecomposableObjective obj = test::RandomCoverage(4, 3, 6, 61);
  UniformRng rng(15);
  std::vector<double> x(4);
  for (double& v : x) v = rng.next_double();
  const double exact = ExactMultilinear(obj, x);
  int hits = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    ThresholdSamples ts(4, 100000, seed);
    if (std::abs(EstimateG(obj, ts, x) - exact) <= 0.01) ++hits;
  }
  EXPECT_GE(hits, 19);
}

TEST(EstimateG, DecomposesAcrossAgents) {
  DecomposableObjective obj = test::RandomCoverage(5, 4, 6, 71);
  ThresholdSamples ts(5, 500, 13);
  UniformRng rng(77);
  std::vector<double> x(5);
  for (double& v : x) v = rng.next_double();
  double per_agent = 0;
  for (int k = 0; k < obj.distinct_agent_count(); ++k) {
    per_agent += EstimateG(obj.AgentObjective(k), ts, x);
  }
  EXPECT_NEAR(EstimateG(obj, ts, x), per_agent, 1e-9);
}

TEST(GainEstimator, FullStepFromOriginIsExact) {
  DecomposableObjective obj = test::RandomCoverage(5, 2, 6, 81);
  ThresholdSamples ts(5, 200, 3);
  GainEstimator estimator(obj, ts);
  for (int u = 0; u < 5; ++u) {
    EXPECT_NEAR(estimator.GainMonotone(u, 1.0),
                obj.Evaluate(std::vector<int>{u}) -
                    obj.Evaluate(std::vector<int>{}),
                1e-12);
  }
}

TEST(GainEstimator, SaturatedCoordinateHasZeroGain) {
  DecomposableObjective obj = test::RandomCoverage(4, 2, 5, 82);
  ThresholdSamples ts(4, 150, 4);
  GainEstimator estimator(obj, ts);
  estimator.ApplyPick(2, 1.0);
  EXPECT_DOUBLE_EQ(estimator.GainMonotone(2, 0.3), 0.0);
  EXPECT_DOUBLE_EQ(estimator.GainMeasured(2, 0.3), 0.0);
}

TEST(GainEstimator, MeasuredEqualsMonotoneAtOrigin) {
  DecomposableObjective obj = test::RandomFacility(5, 3, 83);
  ThresholdSamples ts(5, 300, 5);
  GainEstimator estimator(obj, ts);
  for (int u = 0; u < 5; ++u) {
    EXPECT_DOUBLE_EQ(estimator.GainMonotone(u, 0.4),
                     estimator.GainMeasured(u, 0.4));
  }
}

TEST(GainEstimator, MatchesDefinitionalGains) {
  DecomposableObjective obj = test::RandomFacility(6, 4, 84);
  ThresholdSamples ts(6, 400, 6);
  GainEstimator estimator(obj, ts);
  UniformRng rng(10);
  for (int step = 0; step < 12; ++step) {
    const int u = static_cast<int>(rng.next_index(6));
    const double eta = 0.25;
    const double incremental = estimator.GainMonotone(u, eta);
    const double target = estimator.MonotoneTarget(u, eta);
    const double definitional =
        DefinitionalGain(obj, ts, estimator.y(), u, target);
    EXPECT_NEAR(incremental, definitional, 1e-9);
    estimator.ApplyPick(u, target);
  }
}

TEST(GainEstimator, MeasuredSignMatchesExactMultilinear) {
  DecomposableObjective obj = test::RandomCut(6, 85);
  ThresholdSamples ts(6, 20000, 7);
  GainEstimator estimator(obj, ts);
  estimator.ApplyPick(0, 0.6);
  estimator.ApplyPick(3, 0.4);
  std::vector<double> y = estimator.y();
  for (int u = 1; u < 6; ++u) {
    const double target = estimator.MeasuredTarget(u, 0.5);
    std::vector<double> moved = y;
    moved[u] = target;
    const double exact_diff =
        ExactMultilinear(obj, moved) - ExactMultilinear(obj, y);
    if (std::abs(exact_diff) < 0.01) continue;  // sign too noisy to resolve
    EXPECT_EQ(estimator.GainMeasured(u, 0.5) > 0, exact_diff > 0);
  }
}

TEST(SampleSchedules, UnitValues) {
  // n/gamma = e makes the log term exactly one.
  EXPECT_EQ(SamplesMonotone(1, 1, 1, 1.0 / std::exp(1.0)), 6);
  EXPECT_EQ(SamplesNonmonotone(1, 1, 1, 1.0 / std::exp(1.0)), 48);
}

TEST(SampleSchedules, HighPrecisionValues) {
  // Frozen from an independent long-double evaluation of the formulas:
  //   6*4*625*ln(100)  = 69077.5527898...  -> 69078
  //   48*8*128*ln(100) = 226353.3249816... -> 226354
  const long double mono = 6.0L * 4 * 625 * std::log(100.0L);
  const long double nonmono = 48.0L * 8 * 128 * std::log(100.0L);
  EXPECT_EQ(static_cast<int64_t>(std::ceil(mono)), 69078);
  EXPECT_EQ(static_cast<int64_t>(std::ceil(nonmono)), 226354);
  EXPECT_EQ(SamplesMonotone(2, 5, 10, 0.1), 69078);
  EXPECT_EQ(SamplesNonmonotone(2, 2, 10, 0.1), 226354);
}

TEST(SampleSchedules, ScalingLaws) {
  const double gamma = 1.0 / std::exp(1.0);
  EXPECT_EQ(SamplesMonotone(2, 1, 1, gamma), 4 * SamplesMonotone(1, 1, 1, gamma));
  EXPECT_EQ(SamplesNonmonotone(1, 2, 1, gamma),
            128 * SamplesNonmonotone(1, 1, 1, gamma));
}

TEST(Unbiasedness, FreshThresholdMeansConvergeToMultilinear) {
  DecomposableObjective obj = test::RandomCoverage(6, 2, 6, 91);
  UniformRng rng(21);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<double> x(6);
    for (double& v : x) v = rng.next_double();
    const double exact = ExactMultilinear(obj, x);
    ThresholdSamples ts(6, 100000, 1000 + trial);
    double sum = 0, sum_sq = 0;
    auto cursor = obj.MakeCursor();
    for (int64_t j = 0; j < ts.s(); ++j) {
      cursor->reset();
      for (int u = 0; u < 6; ++u) {
        if (ts.threshold(j, u) < x[u]) cursor->add(u);
      }
      const double v = cursor->value();
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / ts.s();
    const double var = (sum_sq - ts.s() * mean * mean) / (ts.s() - 1);
    const double sigma = std::sqrt(var / ts.s());
    EXPECT_NEAR(mean, exact, 3 * sigma + 1e-9);
  }
}

TEST(GainEnvelope, ScheduleSamplesKeepEstimatesTight) {
  // Fixed small instance; the schedule value at (r=1, T=2, n=4, gamma=0.2)
  // keeps every per-round gain estimate inside the
  // (1±eta)·w ± eta·f(OPT)/(rT) envelope with few exceptions.
  DecomposableObjective obj = test::RandomCoverage(4, 3, 5, 97);
  auto matroid = std::make_shared<CardinalityMatroid>(4, 1);
  const double eta = 0.5, gamma = 0.2;
  const int T = DeriveRounds(eta);
  const int64_t s = SamplesMonotone(1, T, 4, gamma);
  const double f_opt = BruteForceOpt(obj, *matroid).value;
  const double slack = eta * f_opt / (1.0 * T);

  int violations = 0, total = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    ThresholdSamples ts(4, s, seed);
    GainEstimator estimator(obj, ts);
    UniformRng picker(seed + 7000);
    for (int round = 0; round < T; ++round) {
      for (int u = 0; u < 4; ++u) {
        const double target = estimator.MonotoneTarget(u, eta);
        const double estimate = estimator.GainMonotone(u, eta);
        std::vector<double> moved = estimator.y();
        moved[u] = target;
        const double truth = ExactMultilinear(obj, moved) -
                             ExactMultilinear(obj, estimator.y());
        ++total;
        if (estimate < (1 - eta) * truth - slack ||
            estimate > (1 + eta) * truth + slack) {
          ++violations;
        }
      }
      const int pick = static_cast<int>(picker.next_index(4));
      estimator.ApplyPick(pick, estimator.MonotoneTarget(pick, eta));
    }
  }
  EXPECT_LE(violations, (2 * gamma + 0.05) * total);
}

TEST(TotalMovement, SubmodularChainsStayBounded) {
  // Σ|Δf| over an increasing chain is at most 2 − f(∅) for [0,1]-valued
  // submodular functions; quick randomized version.
  UniformRng rng(133);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 5 + static_cast<int>(rng.next_index(4));
    DecomposableObjective obj = trial % 2 == 0
                                    ? test::RandomCut(n, 500 + trial)
                                    : test::RandomCoverage(n, 1, 6, 500 + trial);
    std::vector<int> order(n);
    for (int u = 0; u < n; ++u) order[u] = u;
    rng.shuffle(order);
    std::vector<int> chain;
    double total = 0;
    double prev = obj.Evaluate(chain);
    const double f_empty = prev;
    for (int u : order) {
      SetInsert(chain, u);
      const double next = obj.Evaluate(chain);
      total += std::abs(next - prev);
      prev = next;
    }
    EXPECT_LE(total, 2.0 - f_empty + 1e-9);
  }
}

}  // namespace
}  // namespace psm
