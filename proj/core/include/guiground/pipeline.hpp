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

#ifndef GUIGROUND_PIPELINE_HPP_
#define GUIGROUND_PIPELINE_HPP_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "guiground/category.hpp"
#include "guiground/element.hpp"
#include "guiground/perception.hpp"
#include "guiground/prediction.hpp"

namespace guiground {

// What the instruction asks for: an element type and its role words.
// role holds folded, lowercased tokens in instruction order.
struct TargetDescriptor {
  std::optional<ElementCategory> category;
  std::string role;

  friend bool operator==(const TargetDescriptor&,
                         const TargetDescriptor&) = default;
};

struct MatchScore {
  double total = 0.0;
  double type_component = 0.0;
  double text_component = 0.0;
};

// Relative weights; they are normalized to sum to one before use, so only
// their ratio matters.
struct ScoreWeights {
  double type = 0.4;
  double role = 0.6;
};

inline constexpr double kDefaultMatchThreshold = 0.35;

// Span-to-detection association.
struct AssociationParams {
  double max_horizontal_gap = 32.0;   // pixels
  double min_vertical_overlap = 0.5;  // fraction of the shorter box height
};

// Stage 1. Detections are numbered 1..n in reading order (top-to-bottom,
// then left-to-right by top-left corner). Each span is assigned to at most
// one detection:
//   1. the smallest detection containing the span's center, else
//   2. the nearest detection (center distance) within max_horizontal_gap
//      horizontally and overlapping vertically by min_vertical_overlap.
// Spans assigned to the same element are joined in reading order; spans
// matching nothing are dropped.
std::vector<ScreenElement> build_element_list(
    std::span<const Detection> detections, std::span<const TextSpan> spans,
    const AssociationParams& params = {});

// Stage 2. Lexicon-based extraction (English and French). Category comes
// from the first category keyword; role is what remains after removing
// action verbs, category keywords, stopwords and typed-in values
// ("type in john in the name field" drops "john").
// Throws kEmptyInstruction / kUnresolvableInstruction.
TargetDescriptor extract_target(std::string_view instruction);

// 1 for equal categories, 0.8 between Text field and Text area, 0.5 when the
// target has no category, else 0.
double type_similarity(const std::optional<ElementCategory>& target,
                       ElementCategory element);

// Role similarity in [0, 1] over folded tokens: the larger of token-set
// Jaccard and a token-wise edit similarity (mean over target tokens of the
// best 1 - normalized Levenshtein against any element token). Two empty
// roles score 1, exactly one empty role scores 0.
double text_similarity(std::string_view element_role,
                       std::string_view target_role);

MatchScore score(const ScreenElement& element, const TargetDescriptor& target,
                 const ScoreWeights& weights = {});

struct RetrieveOptions {
  ScoreWeights weights;
  double threshold = kDefaultMatchThreshold;
};

// Stage 3 with the local matcher: highest total wins, ties go to the
// smallest id. Throws kNoElements, or NoMatchError when the best total is
// below the threshold.
const ScreenElement& retrieve(std::span<const ScreenElement> elements,
                              const TargetDescriptor& target,
                              const RetrieveOptions& options = {});

// Chooses one element id for a target. Implementations must return an id
// present in `elements`.
class ElementMatcher {
 public:
  virtual ~ElementMatcher() = default;

  virtual std::string_view name() const = 0;

  // Throws kBackendUnavailable when the matcher cannot run at all. Called
  // before any perception work.
  virtual void check_ready() const {}

  virtual int select(std::span<const ScreenElement> elements,
                     const TargetDescriptor& target) const = 0;

  virtual std::size_t concurrency_limit() const { return 64; }
};

class LocalMatcher final : public ElementMatcher {
 public:
  explicit LocalMatcher(RetrieveOptions options = {}) : options_(options) {}

  std::string_view name() const override { return "local"; }
  int select(std::span<const ScreenElement> elements,
             const TargetDescriptor& target) const override;

 private:
  RetrieveOptions options_;
};

struct StageTimings {
  double perception_ms = 0.0;
  double element_list_ms = 0.0;
  double extraction_ms = 0.0;
  double retrieval_ms = 0.0;
};

struct GroundResult {
  ScreenElement element;
  Prediction prediction;
  TargetDescriptor target;
  std::vector<ScreenElement> elements;
  std::vector<MatchScore> scores;  // parallel to elements
  StageTimings timings;
};

// Runs detect + read_text, build_element_list, extract_target and the
// matcher. Errors are rethrown with Error::stage() set to one of
// "perception", "element_list", "extraction", "retrieval".
class GroundingEngine {
 public:
  GroundingEngine(std::shared_ptr<const Detector> detector,
                  std::shared_ptr<const TextReader> reader,
                  std::shared_ptr<const ElementMatcher> matcher,
                  std::string backend_id = "ivgocr",
                  ScoreWeights weights = {},
                  AssociationParams association = {});

  GroundResult ground(std::string_view image,
                      std::string_view instruction) const;

  const ElementMatcher& matcher() const { return *matcher_; }
  const std::string& backend_id() const { return backend_id_; }

 private:
  std::shared_ptr<const Detector> detector_;
  std::shared_ptr<const TextReader> reader_;
  std::shared_ptr<const ElementMatcher> matcher_;
  std::string backend_id_;
  ScoreWeights weights_;
  AssociationParams association_;
};

void to_json(nlohmann::json& j, const TargetDescriptor& t);
void to_json(nlohmann::json& j, const MatchScore& s);

// {"element", "prediction", "target", "scores", "stage_timings_ms"}
void to_json(nlohmann::json& j, const GroundResult& r);

}  // namespace guiground

#endif  // GUIGROUND_PIPELINE_HPP_
