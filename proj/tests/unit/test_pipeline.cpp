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
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"
#include "guiground/pipeline.hpp"
#include "guiground/random.hpp"
#include "guiground/remote_matcher.hpp"
#include "guiground/synthgui.hpp"

using namespace guiground;
using C = ElementCategory;

namespace {

std::shared_ptr<const GroundingEngine> engine_for(const synth::Fixtures& fx,
                                                  RetrieveOptions opts = {}) {
  return std::make_shared<GroundingEngine>(
      std::make_shared<FixtureDetector>(std::vector{fx.detections}),
      std::make_shared<FixtureTextReader>(std::vector{fx.spans}),
      std::make_shared<LocalMatcher>(opts));
}

}  // namespace

TEST_CASE("span association by containment and adjacency") {
  const std::vector<Detection> dets = {
      {C::kCheckbox, {100, 100, 116, 116}, 1.0},
      {C::kButton, {10, 10, 90, 40}, 1.0},
      {C::kImage, {400, 400, 500, 500}, 1.0},
  };
  const std::vector<TextSpan> spans = {
      {"Submit", {30, 18, 70, 32}, 1.0},
      {"Subscribe", {124, 100, 200, 116}, 1.0},
  };
  const auto list = build_element_list(dets, spans);
  REQUIRE(list.size() == 3);
  CHECK(list[0] == ScreenElement{1, C::kButton, "Submit", {10, 10, 90, 40}});
  CHECK(list[1] == ScreenElement{2, C::kCheckbox, "Subscribe", {100, 100, 116, 116}});
  CHECK(list[2].role.empty());
  CHECK(list[2].id == 3);
}

TEST_CASE("association limits") {
  const std::vector<Detection> dets = {{C::kCheckbox, {100, 100, 116, 116}, 1.0}};
  // 33 px gap is too far.
  CHECK(build_element_list(dets, std::vector<TextSpan>{{"far", {149, 100, 200, 116}, 1.0}})[0]
            .role.empty());
  // Exactly 32 px is accepted.
  CHECK(build_element_list(dets, std::vector<TextSpan>{{"near", {148, 100, 200, 116}, 1.0}})[0]
            .role == "near");
  // Vertical overlap of half the shorter height is the cut-off.
  CHECK(build_element_list(dets, std::vector<TextSpan>{{"half", {120, 109, 200, 123}, 1.0}})[0]
            .role == "half");
  CHECK(build_element_list(dets, std::vector<TextSpan>{{"low", {120, 110, 200, 124}, 1.0}})[0]
            .role.empty());
  // Labels on the left work too.
  CHECK(build_element_list(dets, std::vector<TextSpan>{{"left", {40, 100, 92, 116}, 1.0}})[0]
            .role == "left");
}

TEST_CASE("smallest containing detection wins and spans concatenate") {
  const std::vector<Detection> dets = {
      {C::kDialogBox, {0, 0, 400, 300}, 1.0},
      {C::kButton, {20, 200, 120, 240}, 1.0},
  };
  const std::vector<TextSpan> spans = {
      {"Now", {80, 210, 110, 230}, 1.0},
      {"Save", {30, 210, 70, 230}, 1.0},
      {"Settings", {10, 10, 90, 30}, 1.0},
  };
  const auto list = build_element_list(dets, spans);
  REQUIRE(list.size() == 2);
  CHECK(list[0].category == C::kDialogBox);
  CHECK(list[0].role == "Settings");
  CHECK(list[1].role == "Save Now");
}

TEST_CASE("element list conserves detections and spans") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Detection> dets;
    std::vector<TextSpan> spans;
    const auto nd = rng.index(12);
    for (std::uint64_t i = 0; i < nd; ++i) {
      const double x = rng.uniform(0, 900), y = rng.uniform(0, 700);
      dets.push_back({C::kButton, {x, y, x + rng.uniform(5, 120), y + rng.uniform(5, 60)}, 1.0});
    }
    const auto ns = rng.index(12);
    for (std::uint64_t i = 0; i < ns; ++i) {
      const double x = rng.uniform(0, 900), y = rng.uniform(0, 700);
      spans.push_back({"w" + std::to_string(i), {x, y, x + 30, y + 14}, 1.0});
    }
    const auto list = build_element_list(dets, spans);
    CHECK(list.size() == dets.size());
    std::multiset<std::string> used;
    for (std::size_t i = 0; i < list.size(); ++i) {
      CHECK(list[i].id == static_cast<int>(i + 1));
      std::istringstream words(list[i].role);
      for (std::string w; words >> w;) used.insert(w);
    }
    // Each span lands in at most one element.
    for (const auto& w : used) CHECK(used.count(w) == 1);
    CHECK(used.size() <= spans.size());
  }
}

TEST_CASE("target extraction") {
  CHECK(extract_target("Please type in john in the name field") ==
        TargetDescriptor{C::kTextField, "name"});
  CHECK(extract_target("click submit") == TargetDescriptor{std::nullopt, "submit"});
  CHECK(extract_target("Click the Submit button") == TargetDescriptor{C::kButton, "submit"});
  CHECK(extract_target("check the newsletter checkbox").category == C::kCheckbox);
  CHECK(extract_target("Cliquer sur le bouton Valider") ==
        TargetDescriptor{C::kButton, "valider"});
  CHECK(extract_target("cocher la case à cocher Conditions") ==
        TargetDescriptor{C::kCheckbox, "conditions"});
  CHECK(extract_target("enter hello world in the comments text area") ==
        TargetDescriptor{C::kTextArea, "comments"});
  CHECK(extract_target("open the settings tab").category == C::kTab);
  CHECK(extract_target("select the radio button for express delivery") ==
        TargetDescriptor{C::kRadioButton, "express delivery"});

  try {
    extract_target("   ");
    FAIL("expected EmptyInstruction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyInstruction);
  }
  try {
    extract_target("please click the");
    FAIL("expected UnresolvableInstruction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnresolvableInstruction);
  }
}

TEST_CASE("scoring") {
  auto s = score({1, C::kButton, "submit", {}}, {C::kButton, "submit"});
  CHECK(s.total == doctest::Approx(1.0));
  s = score({1, C::kButton, "cancel", {}}, {C::kButton, "submit"});
  CHECK(s.type_component == 1.0);
  CHECK(s.text_component == 0.0);
  CHECK(s.total == doctest::Approx(0.4));
  s = score({1, C::kTextField, "name", {}}, {std::nullopt, "name"});
  CHECK(s.type_component == 0.5);
  CHECK(s.text_component == 1.0);
  CHECK(s.total == doctest::Approx(0.8));
  CHECK(type_similarity(C::kTextArea, C::kTextField) == 0.8);
  CHECK(type_similarity(C::kLink, C::kTab) == 0.0);
  CHECK(text_similarity("Sélection", "selection") == 1.0);
  CHECK(text_similarity("", "") == 1.0);
  CHECK(text_similarity("", "name") == 0.0);
  CHECK_THROWS_AS(score({1, C::kButton, "x", {}}, {C::kButton, "x"}, {0.0, 0.0}),
                  Error);
}

TEST_CASE("text component is monotone in matching tokens") {
  const std::vector<std::string> vocab = {"save", "sav", "name", "names", "e",
                                          "ok", "cancel", "dd", "d", "mail"};
  Rng rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<std::string> target, element;
    const auto nt = 1 + rng.index(4), ne = rng.index(4);
    for (std::uint64_t i = 0; i < nt; ++i) target.push_back(vocab[rng.index(vocab.size())]);
    for (std::uint64_t i = 0; i < ne; ++i) element.push_back(vocab[rng.index(vocab.size())]);
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& t : v) s += (s.empty() ? "" : " ") + t;
      return s;
    };
    const double before = text_similarity(join(element), join(target));
    element.push_back(target[rng.index(target.size())]);
    const double after = text_similarity(join(element), join(target));
    CHECK(after >= before);
  }
}

TEST_CASE("retrieve picks the best and breaks ties by id") {
  const std::vector<ScreenElement> two = {{1, C::kButton, "submit", {}},
                                          {2, C::kButton, "cancel", {}}};
  CHECK(retrieve(two, {C::kButton, "submit"}).id == 1);

  const std::vector<ScreenElement> dup = {{7, C::kButton, "OK", {}},
                                          {3, C::kButton, "OK", {}},
                                          {5, C::kLink, "help", {}}};
  for (int i = 0; i < 5; ++i) CHECK(retrieve(dup, {C::kButton, "ok"}).id == 3);

  const std::vector<ScreenElement> links = {{1, C::kLink, "abc", {}},
                                            {2, C::kTab, "def", {}}};
  try {
    retrieve(links, {C::kButton, "zzz"});
    FAIL("expected NoMatchAboveThreshold");
  } catch (const NoMatchError& e) {
    CHECK(e.code() == ErrorCode::kNoMatchAboveThreshold);
    CHECK(e.best_score() == 0.0);
  }
  CHECK_THROWS_AS(retrieve(std::vector<ScreenElement>{}, {C::kButton, "x"}), Error);
}

TEST_CASE("argmax is invariant under weight scaling") {
  Rng rng(17);
  const std::vector<std::string> roles = {"save", "cancel", "name", "email",
                                          "save draft", "ok", ""};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<ScreenElement> list;
    const auto n = 1 + rng.index(8);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto c = evaluation_categories()[rng.index(evaluation_categories().size())];
      list.push_back({static_cast<int>(i + 1), c, roles[rng.index(roles.size())], {}});
    }
    const TargetDescriptor t{C::kButton, roles[rng.index(roles.size() - 1)]};
    RetrieveOptions base;
    base.threshold = 0.0;
    RetrieveOptions scaled = base;
    const double k = rng.uniform(0.01, 1000.0);
    scaled.weights = {base.weights.type * k, base.weights.role * k};
    CHECK(retrieve(list, t, base).id == retrieve(list, t, scaled).id);
  }
}

TEST_CASE("grounding a synthetic scene") {
  synth::SceneConfig cfg;
  cfg.fixed = {{C::kButton, "submit"}};
  const auto scene = synth::generate_scene(3, cfg);
  const auto engine = engine_for(synth::emit_fixtures(scene));
  const auto result = engine->ground(scene.image, "click the submit button");
  CHECK(result.element.role == "Submit");
  CHECK(result.element.category == C::kButton);
  const auto& gt = *std::find_if(scene.elements.begin(), scene.elements.end(),
                                 [](const auto& e) { return e.role == "submit"; });
  CHECK(cpv(result.prediction, gt.bbox));
  CHECK(result.prediction.as_box() == gt.bbox);
  CHECK(result.scores.size() == result.elements.size());

  const nlohmann::json j = result;
  CHECK(j.at("element").at("role") == "Submit");
  CHECK(j.at("scores").size() == result.elements.size());
  CHECK(j.at("stage_timings_ms").contains("retrieval"));
}

TEST_CASE("stage errors are tagged") {
  synth::Fixtures empty;
  empty.detections.image = "e.png";
  empty.spans.image = "e.png";
  const auto engine = engine_for(empty);
  try {
    engine->ground("e.png", "click ok");
    FAIL("expected NoElements");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNoElements);
    CHECK(e.stage() == "retrieval");
  }
  try {
    engine->ground("other.png", "click ok");
    FAIL("expected UnknownImage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownImage);
    CHECK(e.stage() == "perception");
  }
  const auto scene = synth::generate_scene(1, {});
  try {
    engine_for(synth::emit_fixtures(scene))->ground(scene.image, "");
    FAIL("expected EmptyInstruction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptyInstruction);
    CHECK(e.stage() == "extraction");
  }
}

TEST_CASE("remote matcher without endpoint fails before perception") {
  GroundingEngine engine(
      std::make_shared<FixtureDetector>(std::vector<DetectionFrame>{}),
      std::make_shared<FixtureTextReader>(std::vector<TextFrame>{}),
      std::make_shared<RemoteMatcher>(RemoteMatcherConfig{}));
  try {
    // The image is unknown, so reaching perception would raise UnknownImage.
    engine.ground("x.png", "click ok");
    FAIL("expected BackendUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBackendUnavailable);
  }
}
