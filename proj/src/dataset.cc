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

#include "psm/dataset.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <system_error>

namespace psm {

namespace {

double ParseField(std::string_view field, const std::string& path, int line) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument(path + ":" + std::to_string(line) +
                                ": malformed coordinate '" + std::string(field) + "'");
  }
  return value;
}

std::string FormatDouble(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

PickupDataset LoadPickups(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::string line;
  int line_no = 0;
  PickupDataset dataset;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) {
      if (line != "lat,lon") {
        throw std::invalid_argument(path + ":1: expected header 'lat,lon'");
      }
      continue;
    }
    if (line.empty()) continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos ||
        line.find(',', comma + 1) != std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected exactly two fields");
    }
    Point p;
    p.lat = ParseField(std::string_view(line).substr(0, comma), path, line_no);
    p.lon = ParseField(std::string_view(line).substr(comma + 1), path, line_no);
    dataset.points.push_back(p);
  }
  if (dataset.points.empty()) {
    throw std::invalid_argument(path + ": no data rows");
  }
  return dataset;
}

void SavePickups(const PickupDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "lat,lon\n";
  for (size_t i = 0; i < dataset.points.size(); ++i) {
    const int mult =
        dataset.multiplicities.empty() ? 1 : dataset.multiplicities[i];
    for (int k = 0; k < mult; ++k) {
      out << FormatDouble(dataset.points[i].lat) << ','
          << FormatDouble(dataset.points[i].lon) << '\n';
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

PickupDataset SynthPickups(const BoundingBox& box, int m, uint64_t seed) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (box.degenerate()) throw std::invalid_argument("degenerate bounding box");
  PickupDataset dataset;
  dataset.points.reserve(m);
  UniformRng rng(seed);
  for (int i = 0; i < m; ++i) {
    Point p;
    p.lat = box.lat_min + (box.lat_max - box.lat_min) * rng.next_double();
    p.lon = box.lon_min + (box.lon_max - box.lon_min) * rng.next_double();
    dataset.points.push_back(p);
  }
  return dataset;
}

std::vector<Point> BuildGrid(const BoundingBox& box, int rows, int cols,
                             int corner_copies) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("rows*cols must be >= 1");
  if (corner_copies < 0) throw std::invalid_argument("corner_copies must be >= 0");
  std::vector<Point> grid;
  grid.reserve(static_cast<size_t>(rows) * cols + corner_copies);
  for (int i = 0; i < rows; ++i) {
    const double lat =
        rows == 1 ? (box.lat_min + box.lat_max) / 2
                  : box.lat_min + (box.lat_max - box.lat_min) * i / (rows - 1);
    for (int j = 0; j < cols; ++j) {
      const double lon =
          cols == 1 ? (box.lon_min + box.lon_max) / 2
                    : box.lon_min + (box.lon_max - box.lon_min) * j / (cols - 1);
      grid.push_back({lat, lon});
    }
  }
  Point north = grid.front();
  for (const Point& p : grid) {
    if (p.lat > north.lat || (p.lat == north.lat && p.lon > north.lon)) {
      north = p;
    }
  }
  for (int k = 0; k < corner_copies; ++k) grid.push_back(north);
  return grid;
}

PickupDataset SamplePickups(const PickupDataset& dataset, int count,
                            uint64_t seed) {
  if (!dataset.multiplicities.empty()) {
    throw std::invalid_argument("cannot subsample a weighted dataset");
  }
  const int total = static_cast<int>(dataset.points.size());
  if (count < 1 || count > total) {
    throw std::invalid_argument("sample size out of range");
  }
  std::vector<int> order(total);
  std::iota(order.begin(), order.end(), 0);
  UniformRng rng(seed);
  // Partial Fisher-Yates: the first `count` slots are a uniform sample.
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(rng.next_index(total - i));
    std::swap(order[i], order[j]);
  }
  order.resize(count);
  std::sort(order.begin(), order.end());
  PickupDataset out;
  out.points.reserve(count);
  for (int idx : order) out.points.push_back(dataset.points[idx]);
  out.normalization = dataset.normalization;
  return out;
}

}  // namespace psm
