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

#ifndef GUIGROUND_PREDICTION_HPP_
#define GUIGROUND_PREDICTION_HPP_

#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "guiground/geometry.hpp"

namespace guiground {

struct BoxPrediction {
  BBox box;
  friend bool operator==(const BoxPrediction&, const BoxPrediction&) = default;
};

struct PointPrediction {
  Point point;
  friend bool operator==(const PointPrediction&,
                         const PointPrediction&) = default;
};

// Output of a grounding backend: either a box or a single point of interest.
struct Prediction {
  std::variant<BoxPrediction, PointPrediction> value;
  std::string backend_id;

  static Prediction box(const BBox& b, std::string backend_id = {}) {
    return {BoxPrediction{b}, std::move(backend_id)};
  }
  static Prediction point(const Point& p, std::string backend_id = {}) {
    return {PointPrediction{p}, std::move(backend_id)};
  }

  bool is_box() const noexcept {
    return std::holds_alternative<BoxPrediction>(value);
  }
  bool is_point() const noexcept { return !is_box(); }
  const BBox& as_box() const { return std::get<BoxPrediction>(value).box; }
  const Point& as_point() const {
    return std::get<PointPrediction>(value).point;
  }

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

// Central point validation: the predicted box's center, or the predicted
// point itself, lies inside the ground-truth box (edges inclusive).
bool cpv(const Prediction& prediction, const BBox& ground_truth);

// {"kind": "box"|"point", "value": [...], "backend_id": "..."}.
// backend_id is optional on input and defaults to empty.
void to_json(nlohmann::json& j, const Prediction& p);
void from_json(const nlohmann::json& j, Prediction& p);

}  // namespace guiground

#endif  // GUIGROUND_PREDICTION_HPP_
