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

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

#include "guiground/dataset.hpp"
#include "guiground/error.hpp"
#include "guiground/synthgui.hpp"

using namespace guiground;
using namespace guiground::synth;

namespace {

SceneConfig evaluation_only() {
  SceneConfig cfg;
  cfg.category_weights.fill(0.0);
  for (auto c : evaluation_categories()) cfg.category_weights[index_of(c)] = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("minimal fixed scene") {
  SceneConfig cfg;
  cfg.min_elements = 0;
  cfg.max_elements = 0;
  cfg.placement = LabelPlacement::kInside;
  cfg.fixed = {{ElementCategory::kButton, "submit"}};
  const auto scene = generate_scene(1, cfg);
  REQUIRE(scene.elements.size() == 1);
  CHECK(scene.elements[0].role == "submit");
  CHECK(scene.elements[0].id == 1);
  REQUIRE(scene.elements[0].label_bbox);
  // Inside placement keeps the label within the widget.
  const auto& lb = *scene.elements[0].label_bbox;
  const auto& b = scene.elements[0].bbox;
  CHECK(lb.x_min >= b.x_min);
  CHECK(lb.x_max <= b.x_max);
  CHECK(lb.y_min >= b.y_min);
  CHECK(lb.y_max <= b.y_max);
}

TEST_CASE("scenes are deterministic") {
  SceneConfig cfg;
  cfg.ambiguity = 1;
  CHECK(generate_scene(1, cfg) == generate_scene(1, cfg));
  CHECK(nlohmann::json(generate_scene(9, cfg)).dump() ==
        nlohmann::json(generate_scene(9, cfg)).dump());
  CHECK_FALSE(generate_scene(1, cfg) == generate_scene(2, cfg));
}

TEST_CASE("ambiguity duplicates a role") {
  SceneConfig cfg;
  cfg.min_elements = 0;
  cfg.max_elements = 0;
  cfg.fixed = {{ElementCategory::kButton, "OK"}, {ElementCategory::kButton, "OK"}};
  const auto fixed = generate_scene(1, cfg);
  REQUIRE(fixed.elements.size() == 2);
  CHECK(fixed.elements[0].role == "OK");
  CHECK(fixed.elements[1].role == "OK");

  SceneConfig amb;
  amb.ambiguity = 1;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto scene = generate_scene(seed, amb);
    std::map<std::pair<ElementCategory, std::string>, int> counts;
    for (const auto& e : scene.elements) {
      if (!e.role.empty()) ++counts[{e.category, e.role}];
    }
    int shared = 0;
    for (const auto& [key, n] : counts) {
      CHECK(n <= 2);
      shared += n == 2;
    }
    CHECK(shared == 1);
  }
}

TEST_CASE("generated scenes respect layout invariants") {
  for (auto lang : {Language::kEnglish, Language::kFrench}) {
    for (auto placement :
         {LabelPlacement::kInside, LabelPlacement::kRight, LabelPlacement::kLeft}) {
      SceneConfig cfg;
      cfg.language = lang;
      cfg.placement = placement;
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto scene = generate_scene(seed, cfg);
        CHECK(scene.image == "scene-" + std::to_string(seed) + ".png");
        CHECK(scene.elements.size() >= cfg.min_elements);
        CHECK(scene.elements.size() <= cfg.max_elements);
        std::set<std::string> roles;
        for (std::size_t i = 0; i < scene.elements.size(); ++i) {
          const auto& e = scene.elements[i];
          CHECK(e.id == static_cast<int>(i + 1));
          CHECK(e.bbox.is_valid());
          CHECK(e.bbox.area() > 0.0);
          CHECK(e.bbox.x_min >= 0.0);
          CHECK(e.bbox.y_min >= 0.0);
          CHECK(e.bbox.x_max <= 1280.0);
          CHECK(e.bbox.y_max <= 800.0);
          CHECK(e.label_text.has_value() == !e.role.empty());
          if (!e.role.empty()) CHECK(roles.insert(e.role).second);
          if (i > 0) {
            const auto& p = scene.elements[i - 1].bbox;
            CHECK((p.y_min < e.bbox.y_min ||
                   (p.y_min == e.bbox.y_min && p.x_min <= e.bbox.x_min)));
          }
          for (std::size_t k = 0; k < i; ++k) {
            CHECK(iou(scene.elements[k].bbox, e.bbox) == 0.0);
          }
        }
      }
    }
  }
}

TEST_CASE("expressions") {
  const auto en = expressions_for(ElementCategory::kButton, "submit",
                                  Language::kEnglish);
  CHECK(std::find(en.begin(), en.end(), "submit button") != en.end());
  CHECK(en == std::vector<std::string>{"submit button", "submit",
                                       "button to submit"});
  CHECK(expressions_for(ElementCategory::kButton, "", Language::kEnglish) ==
        std::vector<std::string>{"button"});
  const auto fr = expressions_for(ElementCategory::kCheckbox, "newsletter",
                                  Language::kFrench);
  CHECK(fr.front() == "case à cocher newsletter");
}

TEST_CASE("ground truth has one pair per evaluable element") {
  const auto cfg = evaluation_only();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto scene = generate_scene(seed, cfg);
    const auto gt = emit_ground_truth(scene);
    CHECK(gt.pairs.size() == scene.elements.size());
    CHECK(gt.elements.size() == scene.elements.size());
    CHECK(validate(gt.pairs).empty());
  }
  SceneConfig mixed;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto scene = generate_scene(seed, mixed);
    const auto gt = emit_ground_truth(scene);
    const auto evaluable = std::count_if(
        scene.elements.begin(), scene.elements.end(),
        [](const SceneElement& e) { return is_evaluation_category(e.category); });
    CHECK(gt.pairs.size() == static_cast<std::size_t>(evaluable));
    CHECK(validate(gt.pairs).empty());
  }
}

TEST_CASE("fixtures under noise") {
  SceneConfig cfg;
  const auto scene = generate_scene(5, cfg);

  const auto clean = emit_fixtures(scene);
  REQUIRE(clean.detections.detections.size() == scene.elements.size());
  std::size_t labels = 0;
  for (std::size_t i = 0; i < scene.elements.size(); ++i) {
    const auto& e = scene.elements[i];
    CHECK(clean.detections.detections[i].bbox == e.bbox);
    CHECK(clean.detections.detections[i].category == e.category);
    if (e.label_text) {
      REQUIRE(labels < clean.spans.spans.size());
      CHECK(clean.spans.spans[labels].text == *e.label_text);
      CHECK(clean.spans.spans[labels].bbox == *e.label_bbox);
      ++labels;
    }
  }
  CHECK(labels == clean.spans.spans.size());

  NoiseConfig drop_all{0.0, 1.0, 0.0};
  CHECK(emit_fixtures(scene, drop_all).detections.detections.empty());

  NoiseConfig jitter{2.0, 0.0, 0.0};
  const auto a = emit_fixtures(scene, jitter);
  const auto b = emit_fixtures(scene, jitter);
  CHECK(a.detections == b.detections);
  CHECK(a.spans == b.spans);
  CHECK_FALSE(a.detections == clean.detections);

  NoiseConfig ocr{0.0, 0.0, 1.0};
  const auto noisy = emit_fixtures(scene, ocr);
  for (std::size_t i = 0; i < noisy.spans.spans.size(); ++i) {
    CHECK(noisy.spans.spans[i].text != clean.spans.spans[i].text);
    CHECK(noisy.spans.spans[i].text.size() == clean.spans.spans[i].text.size());
  }

  CHECK_THROWS_AS(emit_fixtures(scene, {-1.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(emit_fixtures(scene, {0.0, 1.5, 0.0}), Error);
}

TEST_CASE("configuration errors") {
  SceneConfig bad;
  bad.min_elements = 5;
  bad.max_elements = 2;
  CHECK_THROWS_AS(generate_scene(0, bad), Error);

  SceneConfig crowded;
  crowded.min_elements = 40;
  crowded.max_elements = 40;
  crowded.image_size = {300, 120};
  try {
    generate_scene(0, crowded);
    FAIL("expected a placement error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kPlacementError);
  }
}
