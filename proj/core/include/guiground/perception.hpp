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

#ifndef GUIGROUND_PERCEPTION_HPP_
#define GUIGROUND_PERCEPTION_HPP_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "guiground/category.hpp"
#include "guiground/geometry.hpp"

namespace guiground {

struct Detection {
  ElementCategory category = ElementCategory::kButton;
  BBox bbox;
  double confidence = 1.0;
  friend bool operator==(const Detection&, const Detection&) = default;
};

struct TextSpan {
  std::string text;
  BBox bbox;
  double confidence = 1.0;
  friend bool operator==(const TextSpan&, const TextSpan&) = default;
};

inline constexpr double kDefaultDetectionThreshold = 0.25;
inline constexpr double kDefaultTextThreshold = 0.5;

// Object detector contract. Results carry no ordering guarantee.
// Throws kUnknownImage for images the backend cannot serve and
// kBackendUnavailable when the backend is not usable.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual std::vector<Detection> detect(std::string_view image) const = 0;
};

// OCR contract. Spans may be word- or line-level.
class TextReader {
 public:
  virtual ~TextReader() = default;
  virtual std::vector<TextSpan> read_text(std::string_view image) const = 0;
};

// Per-image records of the fixture files:
//   {"image": "...", "detections": [{"category", "bbox", "confidence"}]}
//   {"image": "...", "spans": [{"text", "bbox", "confidence"}]}
struct DetectionFrame {
  std::string image;
  std::vector<Detection> detections;
  friend bool operator==(const DetectionFrame&, const DetectionFrame&) = default;
};

struct TextFrame {
  std::string image;
  std::vector<TextSpan> spans;
  friend bool operator==(const TextFrame&, const TextFrame&) = default;
};

void to_json(nlohmann::json& j, const DetectionFrame& f);
void from_json(const nlohmann::json& j, DetectionFrame& f);
void to_json(nlohmann::json& j, const TextFrame& f);
void from_json(const nlohmann::json& j, TextFrame& f);

std::vector<DetectionFrame> read_detection_frames(std::istream& in);
std::vector<TextFrame> read_text_frames(std::istream& in);
void write_detection_frames(std::ostream& out,
                            std::span<const DetectionFrame> frames);
void write_text_frames(std::ostream& out, std::span<const TextFrame> frames);

// Replays stored detector output. Detections with confidence below the
// threshold are dropped. Immutable after construction.
class FixtureDetector final : public Detector {
 public:
  explicit FixtureDetector(std::vector<DetectionFrame> frames,
                           double threshold = kDefaultDetectionThreshold);
  static FixtureDetector from_file(const std::filesystem::path& path,
                                   double threshold = kDefaultDetectionThreshold);

  std::vector<Detection> detect(std::string_view image) const override;
  double threshold() const noexcept { return threshold_; }

 private:
  std::map<std::string, std::vector<Detection>, std::less<>> frames_;
  double threshold_;
};

class FixtureTextReader final : public TextReader {
 public:
  explicit FixtureTextReader(std::vector<TextFrame> frames,
                             double threshold = kDefaultTextThreshold);
  static FixtureTextReader from_file(const std::filesystem::path& path,
                                     double threshold = kDefaultTextThreshold);

  std::vector<TextSpan> read_text(std::string_view image) const override;
  double threshold() const noexcept { return threshold_; }

 private:
  std::map<std::string, std::vector<TextSpan>, std::less<>> frames_;
  double threshold_;
};

}  // namespace guiground

#endif  // GUIGROUND_PERCEPTION_HPP_
