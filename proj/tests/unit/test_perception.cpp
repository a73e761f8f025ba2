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

#include <sstream>
#include <string>

#include "guiground/error.hpp"
#include "guiground/perception.hpp"
#include "guiground/synthgui.hpp"
#include "temp_dir.hpp"

using namespace guiground;

namespace {

const char* kDetections =
    R"({"image":"a.png","detections":[)"
    R"({"category":"Button","bbox":[10,10,90,40],"confidence":0.9},)"
    R"({"category":"Checkbox","bbox":[100,100,116,116],"confidence":0.3},)"
    R"({"category":"Link","bbox":[5,60,50,70],"confidence":0.1}]})"
    "\n"
    R"({"image":"blank.png","detections":[]})"
    "\n";

const char* kSpans =
    R"({"image":"a.png","spans":[)"
    R"({"text":"Submit","bbox":[30,18,70,32]},)"
    R"({"text":"Cancel","bbox":[130,18,170,32],"confidence":0.95}]})"
    "\n"
    R"({"image":"blank.png","spans":[]})"
    "\n";

}  // namespace

TEST_CASE("fixture detector replays and filters") {
  std::istringstream in(kDetections);
  FixtureDetector all(read_detection_frames(in), 0.0);
  CHECK(all.detect("a.png").size() == 3);
  CHECK(all.detect("blank.png").empty());

  std::istringstream again(kDetections);
  FixtureDetector filtered(read_detection_frames(again));
  const auto dets = filtered.detect("a.png");
  REQUIRE(dets.size() == 2);
  CHECK(dets[0].category == ElementCategory::kButton);
  CHECK(dets[1].confidence == 0.3);

  try {
    filtered.detect("missing.png");
    FAIL("expected UnknownImage");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnknownImage);
  }
}

TEST_CASE("fixture text reader replays spans") {
  std::istringstream in(kSpans);
  FixtureTextReader reader(read_text_frames(in));
  const auto spans = reader.read_text("a.png");
  REQUIRE(spans.size() == 2);
  CHECK(spans[0].text == "Submit");
  CHECK(spans[0].confidence == 1.0);
  CHECK(spans[1].bbox == BBox{130, 18, 170, 32});
  CHECK(reader.read_text("blank.png").empty());
  CHECK_THROWS_AS(reader.read_text("nope.png"), Error);
}

TEST_CASE("malformed fixtures") {
  auto parse_det = [](const std::string& s) {
    std::istringstream in(s);
    return read_detection_frames(in);
  };
  auto parse_text = [](const std::string& s) {
    std::istringstream in(s);
    return read_text_frames(in);
  };
  CHECK_THROWS_AS(
      parse_det(R"({"image":"a","detections":[{"category":"Button","bbox":[0,0,1,1],"confidence":1.5}]})"),
      Error);
  CHECK_THROWS_AS(
      parse_det(R"({"image":"a","detections":[{"category":"Button","bbox":[5,0,1,1]}]})"),
      Error);
  CHECK_THROWS_AS(parse_det(R"({"detections":[]})"), Error);
  CHECK_THROWS_AS(parse_text(R"({"image":"a","spans":[{"text":"  ","bbox":[0,0,1,1]}]})"),
                  Error);
  auto dup = parse_det(std::string(R"({"image":"a","detections":[]})") + "\n" +
                       R"({"image":"a","detections":[]})");
  CHECK_THROWS_AS(FixtureDetector(std::move(dup)), Error);
}

TEST_CASE("frames round trip and load from files") {
  std::istringstream in(kDetections);
  const auto frames = read_detection_frames(in);
  std::ostringstream out;
  write_detection_frames(out, frames);
  std::istringstream back(out.str());
  CHECK(read_detection_frames(back) == frames);

  testing_util::TempDir dir;
  testing_util::write_file(dir / "spans.jsonl", kSpans);
  CHECK(FixtureTextReader::from_file(dir / "spans.jsonl").read_text("a.png").size() == 2);
  CHECK_THROWS_AS(FixtureDetector::from_file(dir / "missing.jsonl"), Error);
}

TEST_CASE("zero-noise synthetic fixtures reproduce the scene") {
  const auto scene = synth::generate_scene(11, {});
  const auto fx = synth::emit_fixtures(scene);
  FixtureDetector det({fx.detections});
  FixtureTextReader reader({fx.spans});
  const auto dets = det.detect(scene.image);
  const auto spans = reader.read_text(scene.image);
  REQUIRE(dets.size() == scene.elements.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < scene.elements.size(); ++i) {
    CHECK(dets[i].bbox == scene.elements[i].bbox);
    CHECK(dets[i].category == scene.elements[i].category);
    if (scene.elements[i].label_text) {
      REQUIRE(k < spans.size());
      CHECK(spans[k].text == *scene.elements[i].label_text);
      CHECK(spans[k].bbox == *scene.elements[i].label_bbox);
      ++k;
    }
  }
  CHECK(k == spans.size());
}
