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

#ifndef PSM_ELEMENT_SET_H_
#define PSM_ELEMENT_SET_H_

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace psm {

// Element sets are sorted vectors of unique indices throughout the library.

inline bool SetContains(std::span<const int> set, int u) {
  return std::binary_search(set.begin(), set.end(), u);
}

inline std::vector<int> SetWith(std::span<const int> set, int u) {
  std::vector<int> out(set.begin(), set.end());
  out.insert(std::upper_bound(out.begin(), out.end(), u), u);
  return out;
}

inline std::vector<int> SetWithout(std::span<const int> set, int u) {
  std::vector<int> out;
  out.reserve(set.size());
  for (int v : set) {
    if (v != u) out.push_back(v);
  }
  return out;
}

inline void SetInsert(std::vector<int>& set, int u) {
  set.insert(std::upper_bound(set.begin(), set.end(), u), u);
}

// Elements of `a` that are not in `b`; both sorted.
inline std::vector<int> SetMinus(std::span<const int> a,
                                 std::span<const int> b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline std::vector<int> MaskToSet(uint32_t mask) {
  std::vector<int> out;
  for (int u = 0; mask != 0; ++u, mask >>= 1) {
    if (mask & 1u) out.push_back(u);
  }
  return out;
}

}  // namespace psm

#endif  // PSM_ELEMENT_SET_H_
