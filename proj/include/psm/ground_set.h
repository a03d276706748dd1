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

#ifndef PSM_GROUND_SET_H_
#define PSM_GROUND_SET_H_

#include <optional>
#include <string>
#include <vector>

namespace psm {

// Elements are dense integer indices 0..size-1. Labels are cosmetic.
struct GroundSet {
  int size = 0;
  std::vector<std::string> labels;  // empty, or exactly `size` entries
  std::optional<int> dummy_from;    // first appended zero-value element

  // Throws std::invalid_argument on a malformed ground set.
  void Validate() const;

  std::string label(int u) const;
};

}  // namespace psm

#endif  // PSM_GROUND_SET_H_
