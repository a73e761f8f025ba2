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

#ifndef GUIGROUND_GEOMETRY_HPP_
#define GUIGROUND_GEOMETRY_HPP_

#include <nlohmann/json_fwd.hpp>

namespace guiground {

// Pixel-space point. Origin is the top-left corner; y grows downward.
struct Point {
  double x = 0.0;
  double y = 0.0;

  bool is_valid() const noexcept;
  friend bool operator==(const Point&, const Point&) = default;
};

// Axis-aligned box in corner format with continuous area semantics.
struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  // Finite, non-negative and ordered on both axes.
  bool is_valid() const noexcept;

  double width() const noexcept { return x_max - x_min; }
  double height() const noexcept { return y_max - y_min; }
  double area() const noexcept { return width() * height(); }

  BBox translated(double dx, double dy) const noexcept {
    return {x_min + dx, y_min + dy, x_max + dx, y_max + dy};
  }

  friend bool operator==(const BBox&, const BBox&) = default;
};

// Throws Error(kContractViolation) naming `what` when the box is invalid.
void require_valid(const BBox& box, const char* what);

// Intersection area over union area. Two boxes whose union has zero area
// score 0. Throws kContractViolation on an invalid box.
double iou(const BBox& a, const BBox& b);

Point center(const BBox& box);

// Inclusive on all four edges.
bool contains(const BBox& box, const Point& p) noexcept;

void to_json(nlohmann::json& j, const Point& p);
void from_json(const nlohmann::json& j, Point& p);
void to_json(nlohmann::json& j, const BBox& b);
void from_json(const nlohmann::json& j, BBox& b);

}  // namespace guiground

#endif  // GUIGROUND_GEOMETRY_HPP_
