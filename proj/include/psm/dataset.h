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

#ifndef PSM_DATASET_H_
#define PSM_DATASET_H_

#include <string>
#include <vector>

#include "psm/builtin_objectives.h"
#include "psm/rng.h"

namespace psm {

struct BoundingBox {
  double lat_min = 0, lon_min = 0, lat_max = 0, lon_max = 0;

  bool degenerate() const { return lat_max <= lat_min || lon_max <= lon_min; }
  Point center() const { return {(lat_min + lat_max) / 2, (lon_min + lon_max) / 2}; }
};

// CSV schema: header "lat,lon", one decimal-degree pair per row, LF endings.
// Parse errors name the offending line; a file with no data rows is an error.
PickupDataset LoadPickups(const std::string& path);

// Writes coordinates with shortest round-trip formatting, so load(save(d))
// reproduces the doubles bit-exactly.
void SavePickups(const PickupDataset& dataset, const std::string& path);

// m uniform points in the box from a seeded stream.
PickupDataset SynthPickups(const BoundingBox& box, int m, uint64_t seed);

// rows × cols evenly spaced grid over the box (a single row/column sits at
// the box center along that axis), plus corner_copies duplicates of the
// northernmost vertex (max lat; ties broken toward max lon) appended.
std::vector<Point> BuildGrid(const BoundingBox& box, int rows, int cols,
                             int corner_copies);

// Uniform subsample without replacement; keeps the source order of the
// chosen rows. Requires count ≤ dataset size.
PickupDataset SamplePickups(const PickupDataset& dataset, int count,
                            uint64_t seed);

}  // namespace psm

#endif  // PSM_DATASET_H_
