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

#ifndef GUIGROUND_CATEGORY_HPP_
#define GUIGROUND_CATEGORY_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace guiground {

// The fourteen detection categories.
enum class ElementCategory : std::uint8_t {
  kButton,
  kTextField,
  kTextArea,
  kCheckbox,
  kRadioButton,
  kText,
  kLink,
  kList,
  kTab,
  kDialogBox,
  kImage,
  kProgressBar,
  kToolbar,
  kMenuBar,
};

inline constexpr std::size_t kCategoryCount = 14;

// All categories in declaration order.
std::span<const ElementCategory> all_categories();

// The eight categories used for grounding evaluation, in the row order of
// the evaluation tables: Tab, Button, Text field, Link, Radio button,
// Checkbox, List, Text area.
std::span<const ElementCategory> evaluation_categories();

bool is_evaluation_category(ElementCategory c);

constexpr std::size_t index_of(ElementCategory c) {
  return static_cast<std::size_t>(c);
}

// Canonical display name, e.g. "Text field". Round-trips through
// category_from_string byte for byte.
std::string_view to_string(ElementCategory c);
std::optional<ElementCategory> category_from_string(std::string_view name);

void to_json(nlohmann::json& j, ElementCategory c);
void from_json(const nlohmann::json& j, ElementCategory& c);

}  // namespace guiground

#endif  // GUIGROUND_CATEGORY_HPP_
