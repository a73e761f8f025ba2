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

#include "guiground/category.hpp"

#include <algorithm>
#include <string>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"

namespace guiground {
namespace {

using C = ElementCategory;

constexpr std::array<ElementCategory, kCategoryCount> kAll = {
    C::kButton, C::kTextField, C::kTextArea,    C::kCheckbox, C::kRadioButton,
    C::kText,   C::kLink,      C::kList,        C::kTab,      C::kDialogBox,
    C::kImage,  C::kProgressBar, C::kToolbar,   C::kMenuBar,
};

constexpr std::array<ElementCategory, 8> kEvaluation = {
    C::kTab,         C::kButton,   C::kTextField, C::kLink,
    C::kRadioButton, C::kCheckbox, C::kList,      C::kTextArea,
};

constexpr std::array<std::string_view, kCategoryCount> kNames = {
    "Button", "Text field", "Text area", "Checkbox",     "Radio button",
    "Text",   "Link",       "List",      "Tab",          "Dialog box",
    "Image",  "Progress bar", "Toolbar", "Menu bar",
};

}  // namespace

std::span<const ElementCategory> all_categories() { return kAll; }

std::span<const ElementCategory> evaluation_categories() { return kEvaluation; }

bool is_evaluation_category(ElementCategory c) {
  return std::find(kEvaluation.begin(), kEvaluation.end(), c) !=
         kEvaluation.end();
}

std::string_view to_string(ElementCategory c) { return kNames[index_of(c)]; }

std::optional<ElementCategory> category_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return kAll[i];
  }
  return std::nullopt;
}

void to_json(nlohmann::json& j, ElementCategory c) {
  j = std::string(to_string(c));
}

void from_json(const nlohmann::json& j, ElementCategory& c) {
  if (!j.is_string()) {
    throw Error(ErrorCode::kParseError, "category must be a string");
  }
  const auto& name = j.get_ref<const std::string&>();
  auto parsed = category_from_string(name);
  if (!parsed) {
    throw Error(ErrorCode::kParseError, "unknown category \"" + name + "\"");
  }
  c = *parsed;
}

}  // namespace guiground
