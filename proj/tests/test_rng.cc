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

#include "psm/rng.h"

#include "gtest/gtest.h"

namespace psm {
namespace {

TEST(UniformRng, DeterministicStream) {
  UniformRng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
  }
}

TEST(UniformRng, DoublesInUnitInterval) {
  UniformRng rng(7);
  for (int i = 0; i < 10000; ++i) {
    double v = rng.next_double();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(UniformRng, BoundedIndexCoversRange) {
  UniformRng rng(3);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 5000; ++i) {
    ++seen[rng.next_index(5)];
  }
  for (int count : seen) EXPECT_GT(count, 800);
}

TEST(DeriveSeed, IndependentOfOtherFields) {
  const uint64_t base = DeriveSeed(1, "thresholds", "pcg", 10, 3);
  EXPECT_EQ(base, DeriveSeed(1, "thresholds", "pcg", 10, 3));
  EXPECT_NE(base, DeriveSeed(1, "mechanism", "pcg", 10, 3));
  EXPECT_NE(base, DeriveSeed(1, "thresholds", "dpg", 10, 3));
  EXPECT_NE(base, DeriveSeed(1, "thresholds", "pcg", 12, 3));
  EXPECT_NE(base, DeriveSeed(1, "thresholds", "pcg", 10, 4));
  EXPECT_NE(base, DeriveSeed(2, "thresholds", "pcg", 10, 3));
}

}  // namespace
}  // namespace psm
