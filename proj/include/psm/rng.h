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

#ifndef PSM_RNG_H_
#define PSM_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace psm {

// Deterministic uniform stream. Wraps std::mt19937_64 but converts raw
// 64-bit draws to doubles and bounded integers directly, so sequences do
// not depend on the standard library's distribution implementations.
class UniformRng {
 public:
  explicit UniformRng(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(gen_() >> 11) * kInv53; }

  // Uniform in {0, ..., bound-1}, unbiased via rejection.
  uint64_t next_index(uint64_t bound);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[next_index(i)]);
    }
  }

 private:
  static constexpr double kInv53 = 1.0 / 9007199254740992.0;  // 2^-53
  std::mt19937_64 gen_;
};

// Stable 64-bit FNV-1a hash over a byte string.
uint64_t Fnv1a64(std::string_view bytes);

// Derives an independent sub-seed from a master seed and a context tuple.
// The encoding is part of the reproducibility contract: seeds derived for
// one (purpose, algorithm, sweep, repetition) tuple never change when other
// tuples are added or removed.
uint64_t DeriveSeed(uint64_t master, std::string_view purpose,
                    std::string_view algorithm = {}, int64_t sweep_value = 0,
                    int64_t repetition = 0);

}  // namespace psm

#endif  // PSM_RNG_H_
