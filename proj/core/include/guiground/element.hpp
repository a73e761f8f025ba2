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

#ifndef GUIGROUND_ELEMENT_HPP_
#define GUIGROUND_ELEMENT_HPP_

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "guiground/category.hpp"
#include "guiground/geometry.hpp"

namespace guiground {

// One entry of a screen's element list: Id, type, role and coordinates.
struct ScreenElement {
  int id = 0;
  ElementCategory category = ElementCategory::kButton;
  std::string role;  // empty when no text is associated
  BBox bbox;

  friend bool operator==(const ScreenElement&, const ScreenElement&) = default;
};

void to_json(nlohmann::json& j, const ScreenElement& e);
void from_json(const nlohmann::json& j, ScreenElement& e);

}  // namespace guiground

#endif  // GUIGROUND_ELEMENT_HPP_
