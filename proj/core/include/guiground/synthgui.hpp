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

#ifndef GUIGROUND_SYNTHGUI_HPP_
#define GUIGROUND_SYNTHGUI_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "guiground/category.hpp"
#include "guiground/dataset.hpp"
#include "guiground/element.hpp"
#include "guiground/geometry.hpp"
#include "guiground/perception.hpp"

namespace guiground::synth {

enum class LabelPlacement { kInside, kRight, kLeft };
enum class Language { kEnglish, kFrench };

// An element the caller wants in the scene regardless of sampling.
struct FixedElement {
  ElementCategory category = ElementCategory::kButton;
  std::string role;
};

struct SceneConfig {
  std::size_t min_elements = 6;
  std::size_t max_elements = 14;
  // Sampling weights indexed by index_of(category). Defaults follow the
  // pairs-dataset category mix.
  std::array<double, kCategoryCount> category_weights = default_weights();
  LabelPlacement placement = LabelPlacement::kRight;
  // Number of groups of two same-category elements sharing one role.
  std::size_t ambiguity = 0;
  Language language = Language::kEnglish;
  ImageSize image_size = {1280, 800};
  std::vector<FixedElement> fixed;

  // Throws kContractViolation on negative weights, no enabled category,
  // an inverted count range or a non-positive image size.
  void check() const;

  static std::array<double, kCategoryCount> default_weights();
};

struct SceneElement {
  int id = 0;
  ElementCategory category = ElementCategory::kButton;
  std::string role;
  BBox bbox;
  std::optional<std::string> label_text;
  std::optional<BBox> label_bbox;

  friend bool operator==(const SceneElement&, const SceneElement&) = default;
};

// Abstract screen: elements laid out without overlap, ids in reading order.
struct SceneGraph {
  std::uint64_t seed = 0;
  std::string image;
  ImageSize image_size;
  Language language = Language::kEnglish;
  std::vector<SceneElement> elements;

  friend bool operator==(const SceneGraph&, const SceneGraph&) = default;
};

// Deterministic in (seed, config). Throws kPlacementError when the elements
// do not fit on the canvas.
SceneGraph generate_scene(std::uint64_t seed, const SceneConfig& config);

// Three expressions per element following the "<role> button", "<role>",
// "button to <role>" pattern (French variants for French scenes). An empty
// role falls back to the category name alone.
std::vector<std::string> expressions_for(ElementCategory category,
                                         const std::string& role,
                                         Language language);

struct GroundTruth {
  std::vector<ImageExpressionsPair> pairs;
  std::vector<ScreenElement> elements;
};

// One pair per element in an evaluation category; every element appears in
// the element list.
GroundTruth emit_ground_truth(const SceneGraph& scene);

struct NoiseConfig {
  double bbox_jitter_sigma = 0.0;  // pixels
  double drop_probability = 0.0;
  double ocr_error_rate = 0.0;

  void check() const;
};

struct Fixtures {
  DetectionFrame detections;
  TextFrame spans;
};

// Perception outputs for the scene. With zero noise detections equal the
// elements and spans equal the labels exactly. Noise is seeded by the scene
// seed.
Fixtures emit_fixtures(const SceneGraph& scene, const NoiseConfig& noise = {});

void to_json(nlohmann::json& j, const SceneGraph& scene);

}  // namespace guiground::synth

#endif  // GUIGROUND_SYNTHGUI_HPP_
