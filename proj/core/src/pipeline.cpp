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

#include "guiground/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"
#include "guiground/text.hpp"

namespace guiground {
namespace {

using nlohmann::json;

bool reading_order_less(const BBox& a, const BBox& b) {
  if (a.y_min != b.y_min) return a.y_min < b.y_min;
  return a.x_min < b.x_min;
}

double horizontal_gap(const BBox& a, const BBox& b) {
  return std::max(0.0, std::max(a.x_min, b.x_min) - std::min(a.x_max, b.x_max));
}

double vertical_overlap_ratio(const BBox& a, const BBox& b) {
  const double overlap =
      std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  const double shorter = std::min(a.height(), b.height());
  if (overlap <= 0.0 || shorter <= 0.0) return 0.0;
  return overlap / shorter;
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Index into `boxes` of the detection owning `span`, or npos.
std::size_t owner_of(const BBox& span, std::span<const Detection> dets,
                     const AssociationParams& params) {
  constexpr auto npos = static_cast<std::size_t>(-1);
  const Point c = center(span);

  std::size_t best = npos;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    if (!contains(dets[i].bbox, c)) continue;
    if (best == npos || dets[i].bbox.area() < dets[best].bbox.area()) best = i;
  }
  if (best != npos) return best;

  double best_dist = 0.0;
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const BBox& box = dets[i].bbox;
    if (horizontal_gap(span, box) > params.max_horizontal_gap) continue;
    if (vertical_overlap_ratio(span, box) < params.min_vertical_overlap) {
      continue;
    }
    const double d = distance(c, center(box));
    if (best == npos || d < best_dist) {
      best = i;
      best_dist = d;
    }
  }
  return best;
}

template <typename Fn>
auto timed(double& ms, Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  auto result = fn();
  ms = std::chrono::duration<double, std::milli>(
           std::chrono::steady_clock::now() - start)
           .count();
  return result;
}

template <typename Fn>
auto in_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (Error& e) {
    if (e.stage().empty()) e.set_stage(stage);
    throw;
  }
}

}  // namespace

std::vector<ScreenElement> build_element_list(
    std::span<const Detection> detections, std::span<const TextSpan> spans,
    const AssociationParams& params) {
  std::vector<Detection> dets(detections.begin(), detections.end());
  std::stable_sort(dets.begin(), dets.end(),
                   [](const Detection& a, const Detection& b) {
                     return reading_order_less(a.bbox, b.bbox);
                   });

  std::vector<std::vector<const TextSpan*>> assigned(dets.size());
  for (const auto& span : spans) {
    const std::size_t owner = owner_of(span.bbox, dets, params);
    if (owner < dets.size()) assigned[owner].push_back(&span);
  }

  std::vector<ScreenElement> out;
  out.reserve(dets.size());
  for (std::size_t i = 0; i < dets.size(); ++i) {
    auto& mine = assigned[i];
    std::stable_sort(mine.begin(), mine.end(),
                     [](const TextSpan* a, const TextSpan* b) {
                       return reading_order_less(a->bbox, b->bbox);
                     });
    std::string role;
    for (const TextSpan* s : mine) {
      if (!role.empty()) role.push_back(' ');
      role += text::trim(s->text);
    }
    out.push_back({static_cast<int>(i + 1), dets[i].category, std::move(role),
                   dets[i].bbox});
  }
  return out;
}

double type_similarity(const std::optional<ElementCategory>& target,
                       ElementCategory element) {
  if (!target) return 0.5;
  if (*target == element) return 1.0;
  const bool field_pair =
      (*target == ElementCategory::kTextField &&
       element == ElementCategory::kTextArea) ||
      (*target == ElementCategory::kTextArea &&
       element == ElementCategory::kTextField);
  return field_pair ? 0.8 : 0.0;
}

double text_similarity(std::string_view element_role,
                       std::string_view target_role) {
  const auto element_tokens = text::tokenize(element_role);
  const auto target_tokens = text::tokenize(target_role);
  if (element_tokens.empty() && target_tokens.empty()) return 1.0;
  if (element_tokens.empty() || target_tokens.empty()) return 0.0;

  const std::set<std::string> e(element_tokens.begin(), element_tokens.end());
  const std::set<std::string> t(target_tokens.begin(), target_tokens.end());
  std::size_t shared = 0;
  for (const auto& tok : t) shared += e.count(tok);
  const double jaccard = static_cast<double>(shared) /
                         static_cast<double>(e.size() + t.size() - shared);

  double soft = 0.0;
  for (const auto& tok : t) {
    double best = 0.0;
    for (const auto& cand : e) {
      best = std::max(best, text::edit_similarity(tok, cand));
    }
    soft += best;
  }
  soft /= static_cast<double>(t.size());

  return std::clamp(std::max(jaccard, soft), 0.0, 1.0);
}

MatchScore score(const ScreenElement& element, const TargetDescriptor& target,
                 const ScoreWeights& weights) {
  const double sum = weights.type + weights.role;
  if (!(weights.type >= 0.0 && weights.role >= 0.0 && sum > 0.0)) {
    throw Error(ErrorCode::kContractViolation,
                "score weights must be non-negative with a positive sum");
  }
  MatchScore s;
  s.type_component = type_similarity(target.category, element.category);
  s.text_component = text_similarity(element.role, target.role);
  s.total = (weights.type / sum) * s.type_component +
            (weights.role / sum) * s.text_component;
  return s;
}

const ScreenElement& retrieve(std::span<const ScreenElement> elements,
                              const TargetDescriptor& target,
                              const RetrieveOptions& options) {
  if (elements.empty()) {
    throw Error(ErrorCode::kNoElements, "element list is empty");
  }
  // Totals within kTieTolerance count as equal, so rescaled weights that
  // differ only in rounding still break ties by id.
  constexpr double kTieTolerance = 1e-12;
  const ScreenElement* best = nullptr;
  double best_total = -1.0;
  for (const auto& e : elements) {
    const double total = score(e, target, options.weights).total;
    if (total > best_total + kTieTolerance ||
        (total >= best_total - kTieTolerance && e.id < best->id)) {
      best = &e;
      best_total = total;
    }
  }
  if (best_total < options.threshold) {
    throw NoMatchError(best_total, options.threshold);
  }
  return *best;
}

int LocalMatcher::select(std::span<const ScreenElement> elements,
                         const TargetDescriptor& target) const {
  return retrieve(elements, target, options_).id;
}

GroundingEngine::GroundingEngine(std::shared_ptr<const Detector> detector,
                                 std::shared_ptr<const TextReader> reader,
                                 std::shared_ptr<const ElementMatcher> matcher,
                                 std::string backend_id, ScoreWeights weights,
                                 AssociationParams association)
    : detector_(std::move(detector)),
      reader_(std::move(reader)),
      matcher_(std::move(matcher)),
      backend_id_(std::move(backend_id)),
      weights_(weights),
      association_(association) {
  if (!detector_ || !reader_ || !matcher_) {
    throw Error(ErrorCode::kBackendUnavailable,
                "grounding engine needs a detector, a text reader and a "
                "matcher");
  }
}

GroundResult GroundingEngine::ground(std::string_view image,
                                     std::string_view instruction) const {
  GroundResult result;
  in_stage("retrieval", [&] {
    matcher_->check_ready();
    return 0;
  });

  auto [detections, spans] = in_stage("perception", [&] {
    return timed(result.timings.perception_ms, [&] {
      return std::make_pair(detector_->detect(image), reader_->read_text(image));
    });
  });

  result.elements = in_stage("element_list", [&] {
    return timed(result.timings.element_list_ms, [&] {
      return build_element_list(detections, spans, association_);
    });
  });

  result.target = in_stage("extraction", [&] {
    return timed(result.timings.extraction_ms,
                 [&] { return extract_target(instruction); });
  });

  const int id = in_stage("retrieval", [&] {
    return timed(result.timings.retrieval_ms, [&] {
      if (result.elements.empty()) {
        throw Error(ErrorCode::kNoElements, "no elements detected on screen");
      }
      result.scores.reserve(result.elements.size());
      for (const auto& e : result.elements) {
        result.scores.push_back(score(e, result.target, weights_));
      }
      return matcher_->select(result.elements, result.target);
    });
  });

  auto it = std::find_if(result.elements.begin(), result.elements.end(),
                         [id](const ScreenElement& e) { return e.id == id; });
  if (it == result.elements.end()) {
    Error e(ErrorCode::kInvalidId, "matcher returned unknown element id " +
                                       std::to_string(id));
    e.set_stage("retrieval");
    throw e;
  }
  result.element = *it;
  result.prediction = Prediction::box(it->bbox, backend_id_);
  return result;
}

void to_json(json& j, const ScreenElement& e) {
  j = json{{"id", e.id},
           {"category", e.category},
           {"role", e.role},
           {"bbox", e.bbox}};
}

void from_json(const json& j, ScreenElement& e) {
  e.id = j.at("id").get<int>();
  e.category = j.at("category").get<ElementCategory>();
  e.role = j.at("role").get<std::string>();
  e.bbox = j.at("bbox").get<BBox>();
}

void to_json(json& j, const TargetDescriptor& t) {
  j = json{{"category", t.category ? json(*t.category) : json(nullptr)},
           {"role", t.role}};
}

void to_json(json& j, const MatchScore& s) {
  j = json{{"total", s.total},
           {"type", s.type_component},
           {"text", s.text_component}};
}

void to_json(json& j, const GroundResult& r) {
  json scores = json::array();
  for (std::size_t i = 0; i < r.scores.size(); ++i) {
    json s = r.scores[i];
    s["id"] = r.elements[i].id;
    scores.push_back(std::move(s));
  }
  j = json{{"element", r.element},
           {"prediction", r.prediction},
           {"target", r.target},
           {"scores", std::move(scores)},
           {"stage_timings_ms",
            {{"perception", r.timings.perception_ms},
             {"element_list", r.timings.element_list_ms},
             {"extraction", r.timings.extraction_ms},
             {"retrieval", r.timings.retrieval_ms}}}};
}

}  // namespace guiground
