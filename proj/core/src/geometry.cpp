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

#include "guiground/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"

namespace guiground {

bool Point::is_valid() const noexcept {
  return std::isfinite(x) && std::isfinite(y) && x >= 0.0 && y >= 0.0;
}

bool BBox::is_valid() const noexcept {
  return std::isfinite(x_min) && std::isfinite(y_min) &&
         std::isfinite(x_max) && std::isfinite(y_max) && x_min >= 0.0 &&
         y_min >= 0.0 && x_min <= x_max && y_min <= y_max;
}

void require_valid(const BBox& box, const char* what) {
  if (!box.is_valid()) {
    throw Error(ErrorCode::kContractViolation,
                std::string("invalid box for ") + what + ": [" +
                    std::to_string(box.x_min) + ", " +
                    std::to_string(box.y_min) + ", " +
                    std::to_string(box.x_max) + ", " +
                    std::to_string(box.y_max) + "]");
  }
}

double iou(const BBox& a, const BBox& b) {
  require_valid(a, "iou");
  require_valid(b, "iou");
  const double iw =
      std::max(0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
  const double ih =
      std::max(0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

Point center(const BBox& box) {
  require_valid(box, "center");
  return {(box.x_min + box.x_max) / 2.0, (box.y_min + box.y_max) / 2.0};
}

bool contains(const BBox& box, const Point& p) noexcept {
  return box.x_min <= p.x && p.x <= box.x_max && box.y_min <= p.y &&
         p.y <= box.y_max;
}

void to_json(nlohmann::json& j, const Point& p) {
  j = nlohmann::json::array({p.x, p.y});
}

void from_json(const nlohmann::json& j, Point& p) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw Error(ErrorCode::kParseError, "point must be [x, y]");
  }
  p = {j[0].get<double>(), j[1].get<double>()};
}

void to_json(nlohmann::json& j, const BBox& b) {
  j = nlohmann::json::array({b.x_min, b.y_min, b.x_max, b.y_max});
}

void from_json(const nlohmann::json& j, BBox& b) {
  if (!j.is_array() || j.size() != 4) {
    throw Error(ErrorCode::kParseError,
                "bbox must be [x_min, y_min, x_max, y_max]");
  }
  for (const auto& v : j) {
    if (!v.is_number()) {
      throw Error(ErrorCode::kParseError, "bbox coordinates must be numbers");
    }
  }
  b = {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
       j[3].get<double>()};
}

}  // namespace guiground
