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

#include <cmath>

#include "gtest/gtest.h"
#include "psm/element_set.h"

namespace psm {
namespace {

PartitionMatroid TwoPartMatroid() {
  // {{0}, {1, 2}} with unit capacities.
  return PartitionMatroid(3, {{0}, {1, 2}}, {1, 1});
}

TEST(IsIndependent, EmptySetAlwaysIndependent) {
  CardinalityMatroid card(5, 2);
  EXPECT_TRUE(card.IsIndependent(std::vector<int>{}));
  EXPECT_TRUE(TwoPartMatroid().IsIndependent(std::vector<int>{}));
}

TEST(IsIndependent, CardinalityBound) {
  CardinalityMatroid card(5, 2);
  EXPECT_TRUE(card.IsIndependent(std::vector<int>{1, 4}));
  EXPECT_FALSE(card.IsIndependent(std::vector<int>{0, 1, 2}));
}

TEST(IsIndependent, PartitionCapacity) {
  PartitionMatroid part = TwoPartMatroid();
  EXPECT_FALSE(part.IsIndependent(std::vector<int>{1, 2}));
  EXPECT_TRUE(part.IsIndependent(std::vector<int>{0, 2}));
}

TEST(FeasibleExtensions, FullBasisHasNone) {
  CardinalityMatroid card(6, 3);
  EXPECT_TRUE(FeasibleExtensions(card, std::vector<int>{0, 2, 5}).empty());
}

TEST(FeasibleExtensions, EmptyBaseSeesAll) {
  CardinalityMatroid card(5, 3);
  EXPECT_EQ(FeasibleExtensions(card, std::vector<int>{}),
            (std::vector<int>{0, 1, 2, 3, 4}));
}

TEST(FeasibleExtensions, MatchesDefinitionalScan) {
  PartitionMatroid part = TwoPartMatroid();
  EXPECT_EQ(FeasibleExtensions(part, std::vector<int>{1}),
            (std::vector<int>{0}));
  // Definitional cross-check on every independent base of a random matroid.
  PartitionMatroid random(8, {{0, 1, 2}, {3, 4}, {5, 6, 7}}, {2, 1, 1});
  for (uint32_t mask = 0; mask < (1u << 8); ++mask) {
    std::vector<int> base = MaskToSet(mask);
    if (!random.IsIndependent(base)) continue;
    std::vector<int> expected;
    for (int u = 0; u < 8; ++u) {
      if (!SetContains(base, u) && random.IsIndependent(SetWith(base, u))) {
        expected.push_back(u);
      }
    }
    EXPECT_EQ(FeasibleExtensions(random, base), expected);
  }
}

TEST(FeasibleExtensions, DependentBaseThrows) {
  CardinalityMatroid card(5, 1);
  EXPECT_THROW(FeasibleExtensions(card, std::vector<int>{0, 1}),
               std::invalid_argument);
}

TEST(Rank, CardinalityAndPartition) {
  EXPECT_EQ(CardinalityMatroid(10, 4).rank(), 4);
  EXPECT_EQ(TwoPartMatroid().rank(), 2);
}

TEST(Rank, MatchesExhaustiveMaximum) {
  UniformRng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6 + static_cast<int>(rng.next_index(5));  // up to 10
    std::vector<std::vector<int>> parts(3);
    for (int u = 0; u < n; ++u) {
      const int p = static_cast<int>(rng.next_index(4));
      if (p < 3) parts[p].push_back(u);  // p == 3 leaves u unconstrained
    }
    std::vector<int> caps{1 + static_cast<int>(rng.next_index(2)),
                          1 + static_cast<int>(rng.next_index(2)), 1};
    PartitionMatroid matroid(n, parts, caps);
    int best = 0;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> set = MaskToSet(mask);
      if (matroid.IsIndependent(set)) {
        best = std::max(best, static_cast<int>(set.size()));
      }
    }
    EXPECT_EQ(matroid.rank(), best);
  }
}

TEST(FindExchange, PivotMustDiffer) {
  CardinalityMatroid card(5, 2);
  EXPECT_THROW(
      FindExchange(card, std::vector<int>{0, 1}, std::vector<int>{0, 1}, 0),
      std::invalid_argument);
}

TEST(FindExchange, UniformMatroidReturnsFirst) {
  CardinalityMatroid card(6, 3);
  const int e = FindExchange(card, std::vector<int>{0, 1, 2},
                             std::vector<int>{2, 4, 5}, 0);
  EXPECT_EQ(e, 4);
}

TEST(FindExchange, PostconditionHolds) {
  PartitionMatroid matroid(6, {{0, 1, 2}, {3, 4, 5}}, {1, 2});
  const std::vector<int> b1{0, 3, 4};
  const std::vector<int> b2{1, 3, 5};
  const int e = FindExchange(matroid, b1, b2, 0);
  std::vector<int> swapped = SetWith(SetWithout(b1, 0), e);
  EXPECT_TRUE(matroid.IsIndependent(swapped));
  EXPECT_EQ(swapped.size(), b1.size());
}

TEST(RandomBasis, FullGroundWhenUnconstrained) {
  CardinalityMatroid card(6, 6);
  UniformRng rng(5);
  EXPECT_EQ(RandomBasis(card, rng), (std::vector<int>{0, 1, 2, 3, 4, 5}));
}

TEST(RandomBasis, SizeAlwaysRank) {
  PartitionMatroid matroid(7, {{0, 1, 2}, {3, 4}, {5, 6}}, {1, 1, 2});
  UniformRng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> base = RandomBasis(matroid, rng);
    EXPECT_EQ(static_cast<int>(base.size()), matroid.rank());
    EXPECT_TRUE(matroid.IsIndependent(base));
  }
}

TEST(RandomBasis, UniformPerPart) {
  PartitionMatroid matroid(4, {{0, 1, 2, 3}}, {1});
  UniformRng rng(21);
  const int trials = 20000;
  std::vector<int> counts(4, 0);
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<int> base = RandomBasis(matroid, rng);
    ASSERT_EQ(base.size(), 1u);
    ++counts[base[0]];
  }
  const double expected = trials / 4.0;
  const double sigma = std::sqrt(trials * 0.25 * 0.75);
  for (int count : counts) {
    EXPECT_NEAR(count, expected, 3 * sigma);
  }
}

TEST(AugmentedMatroid, FreeElementsRaiseRank) {
  auto inner = std::make_shared<CardinalityMatroid>(5, 2);
  AugmentedMatroid aug(inner, 7);
  EXPECT_EQ(aug.rank(), 4);
  EXPECT_TRUE(aug.IsIndependent(std::vector<int>{0, 1, 5, 6}));
  EXPECT_FALSE(aug.IsIndependent(std::vector<int>{0, 1, 2, 5}));
}

TEST(MatroidFromJson, ParsesBothKinds) {
  auto card = MatroidFromJson(nlohmann::json{{"kind", "cardinality"}, {"r", 3}}, 6);
  EXPECT_EQ(card->rank(), 3);
  auto part = MatroidFromJson(
      nlohmann::json{{"kind", "partition"},
                     {"parts", nlohmann::json::array({{0}, {1, 2}})},
                     {"capacities", {1, 1}}},
      3);
  EXPECT_FALSE(part->IsIndependent(std::vector<int>{1, 2}));
  EXPECT_THROW(MatroidFromJson(nlohmann::json{{"kind", "graphic"}}, 3),
               std::invalid_argument);
}

TEST(MatroidAxioms, SpotCheckDownwardClosureAndExchange) {
  PartitionMatroid matroid(7, {{0, 1, 2}, {3, 4}, {5, 6}}, {2, 1, 1});
  for (uint32_t mask = 0; mask < (1u << 7); ++mask) {
    std::vector<int> b = MaskToSet(mask);
    if (!matroid.IsIndependent(b)) continue;
    // Downward closure.
    for (uint32_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
      EXPECT_TRUE(matroid.IsIndependent(MaskToSet(sub)));
    }
    // Exchange: any smaller independent set extends from a larger one.
    for (uint32_t other = 0; other < (1u << 7); ++other) {
      std::vector<int> a = MaskToSet(other);
      if (!matroid.IsIndependent(a) || a.size() >= b.size()) continue;
      bool extended = false;
      for (int u : SetMinus(b, a)) {
        if (matroid.IsIndependent(SetWith(a, u))) {
          extended = true;
          break;
        }
      }
      EXPECT_TRUE(extended);
    }
    if (mask > 200) break;  // keep the quadratic scan bounded
  }
}

}  // namespace
}  // namespace psm
