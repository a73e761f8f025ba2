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

#include "guiground/perception.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"
#include "guiground/text.hpp"

namespace guiground {
namespace {

using nlohmann::json;

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(ErrorCode::kParseError,
                std::string("missing field \"") + key + "\"");
  }
  return *it;
}

double parse_confidence(const json& j) {
  auto it = j.find("confidence");
  if (it == j.end()) return 1.0;
  const double c = it->get<double>();
  if (!(c >= 0.0 && c <= 1.0)) {
    throw Error(ErrorCode::kParseError, "confidence must lie in [0, 1]");
  }
  return c;
}

BBox parse_valid_box(const json& j) {
  auto box = require(j, "bbox").get<BBox>();
  if (!box.is_valid()) {
    throw Error(ErrorCode::kParseError, "invalid bbox");
  }
  return box;
}

template <typename Frame>
std::vector<Frame> read_frames(std::istream& in) {
  std::vector<Frame> frames;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      frames.push_back(json::parse(line).get<Frame>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return frames;
}

template <typename Frame>
void write_frames(std::ostream& out, std::span<const Frame> frames) {
  for (const auto& f : frames) out << json(f).dump() << '\n';
}

template <typename Item, typename Frame, typename Member>
std::map<std::string, std::vector<Item>, std::less<>> index_frames(
    std::vector<Frame> frames, Member member) {
  std::map<std::string, std::vector<Item>, std::less<>> out;
  for (auto& f : frames) {
    auto [it, inserted] = out.emplace(f.image, std::move(f.*member));
    if (!inserted) {
      throw Error(ErrorCode::kParseError,
                  "duplicate fixture record for image \"" + f.image + "\"");
    }
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

}  // namespace

void to_json(json& j, const DetectionFrame& f) {
  json dets = json::array();
  for (const auto& d : f.detections) {
    dets.push_back({{"category", d.category},
                    {"bbox", d.bbox},
                    {"confidence", d.confidence}});
  }
  j = json{{"image", f.image}, {"detections", std::move(dets)}};
}

void from_json(const json& j, DetectionFrame& f) {
  f.image = require(j, "image").get<std::string>();
  f.detections.clear();
  for (const auto& d : require(j, "detections")) {
    f.detections.push_back({require(d, "category").get<ElementCategory>(),
                            parse_valid_box(d), parse_confidence(d)});
  }
}

void to_json(json& j, const TextFrame& f) {
  json spans = json::array();
  for (const auto& s : f.spans) {
    spans.push_back(
        {{"text", s.text}, {"bbox", s.bbox}, {"confidence", s.confidence}});
  }
  j = json{{"image", f.image}, {"spans", std::move(spans)}};
}

void from_json(const json& j, TextFrame& f) {
  f.image = require(j, "image").get<std::string>();
  f.spans.clear();
  for (const auto& s : require(j, "spans")) {
    auto t = require(s, "text").get<std::string>();
    if (text::trim(t).empty()) {
      throw Error(ErrorCode::kParseError, "span text is blank");
    }
    f.spans.push_back({std::move(t), parse_valid_box(s), parse_confidence(s)});
  }
}

std::vector<DetectionFrame> read_detection_frames(std::istream& in) {
  return read_frames<DetectionFrame>(in);
}

std::vector<TextFrame> read_text_frames(std::istream& in) {
  return read_frames<TextFrame>(in);
}

void write_detection_frames(std::ostream& out,
                            std::span<const DetectionFrame> frames) {
  write_frames(out, frames);
}

void write_text_frames(std::ostream& out, std::span<const TextFrame> frames) {
  write_frames(out, frames);
}

FixtureDetector::FixtureDetector(std::vector<DetectionFrame> frames,
                                 double threshold)
    : frames_(index_frames<Detection>(std::move(frames),
                                      &DetectionFrame::detections)),
      threshold_(threshold) {}

FixtureDetector FixtureDetector::from_file(const std::filesystem::path& path,
                                           double threshold) {
  auto in = open_input(path);
  return FixtureDetector(read_detection_frames(in), threshold);
}

std::vector<Detection> FixtureDetector::detect(std::string_view image) const {
  auto it = frames_.find(image);
  if (it == frames_.end()) {
    throw Error(ErrorCode::kUnknownImage,
                "no detections recorded for \"" + std::string(image) + "\"");
  }
  std::vector<Detection> out;
  for (const auto& d : it->second) {
    if (d.confidence >= threshold_) out.push_back(d);
  }
  return out;
}

FixtureTextReader::FixtureTextReader(std::vector<TextFrame> frames,
                                     double threshold)
    : frames_(index_frames<TextSpan>(std::move(frames), &TextFrame::spans)),
      threshold_(threshold) {}

FixtureTextReader FixtureTextReader::from_file(
    const std::filesystem::path& path, double threshold) {
  auto in = open_input(path);
  return FixtureTextReader(read_text_frames(in), threshold);
}

std::vector<TextSpan> FixtureTextReader::read_text(
    std::string_view image) const {
  auto it = frames_.find(image);
  if (it == frames_.end()) {
    throw Error(ErrorCode::kUnknownImage,
                "no text spans recorded for \"" + std::string(image) + "\"");
  }
  std::vector<TextSpan> out;
  for (const auto& s : it->second) {
    if (s.confidence >= threshold_) out.push_back(s);
  }
  return out;
}

}  // namespace guiground
