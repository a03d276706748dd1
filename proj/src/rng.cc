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

#include <limits>
#include <string>

namespace psm {

uint64_t UniformRng::next_index(uint64_t bound) {
  if (bound == 0) return 0;
  const uint64_t limit =
      std::numeric_limits<uint64_t>::max() -
      (std::numeric_limits<uint64_t>::max() % bound + 1) % bound;
  uint64_t draw = gen_();
  while (draw > limit) draw = gen_();
  return draw % bound;
}

uint64_t Fnv1a64(std::string_view bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

uint64_t DeriveSeed(uint64_t master, std::string_view purpose,
                    std::string_view algorithm, int64_t sweep_value,
                    int64_t repetition) {
  std::string key;
  key.reserve(64);
  key += "master=";
  key += std::to_string(master);
  key += "|purpose=";
  key += purpose;
  key += "|algorithm=";
  key += algorithm;
  key += "|sweep=";
  key += std::to_string(sweep_value);
  key += "|rep=";
  key += std::to_string(repetition);
  uint64_t h = Fnv1a64(key);
  // A seed of zero would degrade some generators; remap deterministically.
  return h == 0 ? 0x9e3779b97f4a7c15ull : h;
}

}  // namespace psm
