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

#include "guiground/prediction.hpp"

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"

namespace guiground {

bool cpv(const Prediction& prediction, const BBox& ground_truth) {
  if (prediction.is_box()) {
    return contains(ground_truth, center(prediction.as_box()));
  }
  return contains(ground_truth, prediction.as_point());
}

void to_json(nlohmann::json& j, const Prediction& p) {
  j = nlohmann::json::object();
  if (p.is_box()) {
    j["kind"] = "box";
    j["value"] = p.as_box();
  } else {
    j["kind"] = "point";
    j["value"] = p.as_point();
  }
  j["backend_id"] = p.backend_id;
}

void from_json(const nlohmann::json& j, Prediction& p) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("value")) {
    throw Error(ErrorCode::kParseError,
                "prediction must be an object with \"kind\" and \"value\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  std::string backend_id;
  if (auto it = j.find("backend_id"); it != j.end() && it->is_string()) {
    backend_id = it->get<std::string>();
  }
  if (kind == "box") {
    p = Prediction::box(j.at("value").get<BBox>(), std::move(backend_id));
  } else if (kind == "point") {
    p = Prediction::point(j.at("value").get<Point>(), std::move(backend_id));
  } else {
    throw Error(ErrorCode::kParseError,
                "prediction kind must be \"box\" or \"point\", got \"" + kind +
                    "\"");
  }
}

}  // namespace guiground
