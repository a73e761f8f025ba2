// Copyright 2026 The guiground Authors.
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

// Reference implementations used by tests. They deliberately avoid the
// library's own geometry and metric code.
#ifndef GUIGROUND_TESTS_ORACLES_HPP_
#define GUIGROUND_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace oracle {

// Box with coordinates stored as integer multiples of 1/scale.
struct IntBox {
  std::int64_t x0, y0, x1, y1;
};

// Exact IoU over integer coordinates: every intermediate is an integer.
inline long double interval_iou(const IntBox& a, const IntBox& b) {
  const std::int64_t iw = std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const std::int64_t ih = std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  const std::int64_t inter = (iw > 0 && ih > 0) ? iw * ih : 0;
  const std::int64_t area_a = (a.x1 - a.x0) * (a.y1 - a.y0);
  const std::int64_t area_b = (b.x1 - b.x0) * (b.y1 - b.y0);
  const std::int64_t uni = area_a + area_b - inter;
  if (uni == 0) return 0.0L;
  return static_cast<long double>(inter) / static_cast<long double>(uni);
}

// Counts unit cells of a grid x grid raster whose centers fall in each box.
inline double grid_iou(const IntBox& a, const IntBox& b, int grid) {
  auto inside = [](const IntBox& r, double x, double y) {
    return x >= r.x0 && x <= r.x1 && y >= r.y0 && y <= r.y1;
  };
  const auto lo_x = std::max<std::int64_t>(0, std::min(a.x0, b.x0));
  const auto hi_x = std::min<std::int64_t>(grid, std::max(a.x1, b.x1));
  const auto lo_y = std::max<std::int64_t>(0, std::min(a.y0, b.y0));
  const auto hi_y = std::min<std::int64_t>(grid, std::max(a.y1, b.y1));
  std::int64_t in_a = 0, in_b = 0, in_both = 0;
  for (auto gy = lo_y; gy < hi_y; ++gy) {
    const double y = static_cast<double>(gy) + 0.5;
    for (auto gx = lo_x; gx < hi_x; ++gx) {
      const double x = static_cast<double>(gx) + 0.5;
      const bool ia = inside(a, x, y);
      const bool ib = inside(b, x, y);
      in_a += ia;
      in_b += ib;
      in_both += ia && ib;
    }
  }
  const auto uni = in_a + in_b - in_both;
  return uni == 0 ? 0.0 : static_cast<double>(in_both) / static_cast<double>(uni);
}

inline bool point_in_box(double bx0, double by0, double bx1, double by1,
                         double px, double py) {
  return !(px < bx0) && !(px > bx1) && !(py < by0) && !(py > by1);
}

// Brute-force per-group mean with plain left-to-right summation in long
// double. Group -1 collects every record.
struct GroupStats {
  std::size_t n = 0;
  long double iou_sum = 0.0L;
  std::size_t hits = 0;
};

inline std::map<int, GroupStats> group_sums(const std::vector<int>& group,
                                            const std::vector<double>& ious,
                                            const std::vector<bool>& hits) {
  std::map<int, GroupStats> out;
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (int g : {group[i], -1}) {
      auto& s = out[g];
      ++s.n;
      s.iou_sum += ious[i];
      s.hits += hits[i] ? 1 : 0;
    }
  }
  return out;
}

// Textbook two-row Levenshtein over code units of already-decoded strings.
inline std::size_t levenshtein(const std::u32string& a, const std::u32string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace oracle

#endif  // GUIGROUND_TESTS_ORACLES_HPP_
