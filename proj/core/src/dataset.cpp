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

#include "guiground/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <nlohmann/json.hpp>

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

ImageSize parse_size(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() ||
      !j[1].is_number_integer()) {
    throw Error(ErrorCode::kParseError, "size must be [width, height] integers");
  }
  return {j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

json size_json(const ImageSize& s) { return json::array({s.width, s.height}); }

// Reads JSON lines, handing each parsed object to `fn`. Structural errors
// are rethrown with the line number.
template <typename Fn>
void for_each_json_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      if (!j.is_object()) {
        throw Error(ErrorCode::kParseError, "record must be a JSON object");
      }
      fn(j, line_no);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kParseError) throw;
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  return in;
}

void check_box(std::vector<Violation>& out, std::size_t index,
               const std::string& field, const BBox& box,
               const ImageSize& size, bool size_ok) {
  if (!box.is_valid()) {
    out.push_back({index, field, ViolationRule::kInvalidBox,
                   "box must be finite, non-negative and ordered"});
    return;
  }
  if (box.area() <= 0.0) {
    out.push_back({index, field, ViolationRule::kZeroAreaBox,
                   "ground-truth box has zero area"});
  }
  if (size_ok && (box.x_max > static_cast<double>(size.width) ||
                  box.y_max > static_cast<double>(size.height))) {
    out.push_back({index, field, ViolationRule::kOutOfBounds,
                   "box exceeds image bounds " + std::to_string(size.width) +
                       "x" + std::to_string(size.height)});
  }
}

void check_common(std::vector<Violation>& out, std::size_t index,
                  const std::string& image, const ImageSize& size) {
  if (text::trim(image).empty()) {
    out.push_back({index, "image", ViolationRule::kEmptyImageRef,
                   "image reference is empty"});
  }
  if (size.width <= 0 || size.height <= 0) {
    out.push_back({index, "size", ViolationRule::kInvalidImageSize,
                   "image size must be positive"});
  }
}

std::vector<Violation> validate_pair(const ImageExpressionsPair& p,
                                     std::size_t index) {
  std::vector<Violation> out;
  check_common(out, index, p.image, p.size);
  const bool size_ok = p.size.width > 0 && p.size.height > 0;
  check_box(out, index, "bbox", p.bbox, p.size, size_ok);
  if (!is_evaluation_category(p.category)) {
    out.push_back({index, "category", ViolationRule::kCategoryNotEvaluable,
                   std::string(to_string(p.category)) +
                       " is not an evaluation category"});
  }
  if (p.expressions.empty()) {
    out.push_back({index, "expressions", ViolationRule::kExpressionsEmpty,
                   "expressions list is empty"});
  }
  for (std::size_t k = 0; k < p.expressions.size(); ++k) {
    if (text::trim(p.expressions[k]).empty()) {
      out.push_back({index, "expressions[" + std::to_string(k) + "]",
                     ViolationRule::kEmptyExpression, "expression is blank"});
    }
  }
  return out;
}

std::vector<Violation> validate_example(const DetectionExample& e,
                                        std::size_t index) {
  std::vector<Violation> out;
  check_common(out, index, e.image, e.size);
  const bool size_ok = e.size.width > 0 && e.size.height > 0;
  for (std::size_t k = 0; k < e.annotations.size(); ++k) {
    check_box(out, index, "annotations[" + std::to_string(k) + "].bbox",
              e.annotations[k].bbox, e.size, size_ok);
  }
  return out;
}

}  // namespace

std::string_view to_string(ViolationRule rule) {
  switch (rule) {
    case ViolationRule::kEmptyImageRef: return "EmptyImageRef";
    case ViolationRule::kInvalidImageSize: return "InvalidImageSize";
    case ViolationRule::kExpressionsEmpty: return "ExpressionsEmpty";
    case ViolationRule::kEmptyExpression: return "EmptyExpression";
    case ViolationRule::kInvalidBox: return "InvalidBox";
    case ViolationRule::kZeroAreaBox: return "ZeroAreaBox";
    case ViolationRule::kOutOfBounds: return "OutOfBounds";
    case ViolationRule::kCategoryNotEvaluable: return "CategoryNotEvaluable";
  }
  return "Unknown";
}

ValidationError::ValidationError(Violation violation)
    : Error(ErrorCode::kInvariantViolation,
            "record " + std::to_string(violation.index) + ", field " +
                violation.field + ": " +
                std::string(to_string(violation.rule)) + " (" +
                violation.message + ")"),
      violation_(std::move(violation)) {}

void to_json(json& j, const ImageExpressionsPair& p) {
  j = json::object();
  j["image"] = p.image;
  j["size"] = size_json(p.size);
  j["bbox"] = p.bbox;
  j["category"] = p.category;
  j["expressions"] = p.expressions;
}

void from_json(const json& j, ImageExpressionsPair& p) {
  p.image = require(j, "image").get<std::string>();
  p.size = parse_size(require(j, "size"));
  p.bbox = require(j, "bbox").get<BBox>();
  p.category = require(j, "category").get<ElementCategory>();
  const json& ex = require(j, "expressions");
  if (!ex.is_array()) {
    throw Error(ErrorCode::kParseError, "expressions must be an array");
  }
  p.expressions.clear();
  for (const auto& e : ex) {
    if (!e.is_string()) {
      throw Error(ErrorCode::kParseError, "expressions must be strings");
    }
    p.expressions.push_back(e.get<std::string>());
  }
}

void to_json(json& j, const DetectionExample& e) {
  j = json::object();
  j["image"] = e.image;
  j["size"] = size_json(e.size);
  json anns = json::array();
  for (const auto& a : e.annotations) {
    anns.push_back({{"category", a.category}, {"bbox", a.bbox}});
  }
  j["annotations"] = std::move(anns);
}

void from_json(const json& j, DetectionExample& e) {
  e.image = require(j, "image").get<std::string>();
  e.size = parse_size(require(j, "size"));
  const json& anns = require(j, "annotations");
  if (!anns.is_array()) {
    throw Error(ErrorCode::kParseError, "annotations must be an array");
  }
  e.annotations.clear();
  for (const auto& a : anns) {
    e.annotations.push_back({require(a, "category").get<ElementCategory>(),
                             require(a, "bbox").get<BBox>()});
  }
}

std::string to_json_line(const ImageExpressionsPair& pair) {
  return json(pair).dump();
}

std::vector<ImageExpressionsPair> read_pairs(std::istream& in) {
  std::vector<ImageExpressionsPair> pairs;
  for_each_json_line(in, [&](const json& j, std::size_t) {
    pairs.push_back(j.get<ImageExpressionsPair>());
  });
  return pairs;
}

std::vector<ImageExpressionsPair> load_pairs(
    const std::filesystem::path& path) {
  auto in = open_input(path);
  auto pairs = read_pairs(in);
  if (auto violations = validate(pairs); !violations.empty()) {
    throw ValidationError(std::move(violations.front()));
  }
  return pairs;
}

void write_pairs(std::ostream& out,
                 std::span<const ImageExpressionsPair> pairs) {
  for (const auto& p : pairs) out << to_json_line(p) << '\n';
}

void save_pairs(const std::filesystem::path& path,
                std::span<const ImageExpressionsPair> pairs) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  write_pairs(out, pairs);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

std::vector<DetectionExample> read_detection_examples(std::istream& in) {
  std::vector<DetectionExample> out;
  for_each_json_line(in, [&](const json& j, std::size_t) {
    out.push_back(j.get<DetectionExample>());
  });
  return out;
}

std::vector<DetectionExample> load_detection_examples(
    const std::filesystem::path& path) {
  auto in = open_input(path);
  auto examples = read_detection_examples(in);
  if (auto violations = validate(examples); !violations.empty()) {
    throw ValidationError(std::move(violations.front()));
  }
  return examples;
}

void write_detection_examples(std::ostream& out,
                              std::span<const DetectionExample> examples) {
  for (const auto& e : examples) out << json(e).dump() << '\n';
}

std::vector<Violation> validate(std::span<const ImageExpressionsPair> pairs) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto v = validate_pair(pairs[i], i);
    out.insert(out.end(), std::make_move_iterator(v.begin()),
               std::make_move_iterator(v.end()));
  }
  return out;
}

std::vector<Violation> validate(std::span<const DetectionExample> examples) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    auto v = validate_example(examples[i], i);
    out.insert(out.end(), std::make_move_iterator(v.begin()),
               std::make_move_iterator(v.end()));
  }
  return out;
}

void SplitSpec::check() const {
  double sum = 0.0;
  for (double r : ratios) {
    if (!std::isfinite(r) || r < 0.0) {
      throw Error(ErrorCode::kInvalidSplitRatios,
                  "ratios must be finite and non-negative");
    }
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "ratios sum to %.12g, expected 1", sum);
    throw Error(ErrorCode::kInvalidSplitRatios, buf);
  }
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  spec.check();
  // The epsilon absorbs products such as 100 * 0.29 = 28.999999999999996.
  auto portion = [n](double r) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * r + 1e-9));
  };
  SplitSizes s;
  s.train = std::min(n, portion(spec.ratios[0]));
  s.val = std::min(n - s.train, portion(spec.ratios[1]));
  s.test = n - s.train - s.val;
  return s;
}

std::vector<std::size_t> split_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(seed);
  rng.shuffle(order);
  return order;
}

std::array<double, 3> parse_ratios(std::string_view text) {
  std::array<double, 3> out{};
  std::size_t k = 0;
  while (true) {
    const auto comma = text.find(',');
    const auto part = text::trim(text.substr(0, comma));
    if (k >= 3) {
      throw Error(ErrorCode::kInvalidSplitRatios, "expected three ratios");
    }
    double value = 0.0;
    const auto* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, value);
    if (ec != std::errc() || ptr != end || part.empty()) {
      throw Error(ErrorCode::kInvalidSplitRatios,
                  "cannot parse ratio \"" + std::string(part) + "\"");
    }
    out[k++] = value;
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (k != 3) {
    throw Error(ErrorCode::kInvalidSplitRatios, "expected three ratios");
  }
  return out;
}

const CategoryShare* DistributionReport::find(ElementCategory c) const {
  for (const auto& r : rows) {
    if (r.category == c) return &r;
  }
  return nullptr;
}

DistributionReport distribution(std::span<const ElementCategory> categories) {
  std::array<std::size_t, kCategoryCount> counts{};
  for (auto c : categories) ++counts[index_of(c)];
  DistributionReport report;
  report.total = categories.size();
  for (auto c : all_categories()) {
    const std::size_t n = counts[index_of(c)];
    if (n == 0) continue;
    const double pct =
        100.0 * static_cast<double>(n) / static_cast<double>(report.total);
    report.rows.push_back({c, n, std::round(pct * 100.0) / 100.0});
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const CategoryShare& a, const CategoryShare& b) {
                     return a.count > b.count;
                   });
  return report;
}

DistributionReport distribution(std::span<const ImageExpressionsPair> pairs) {
  std::vector<ElementCategory> cats;
  cats.reserve(pairs.size());
  for (const auto& p : pairs) cats.push_back(p.category);
  return distribution(cats);
}

double parse_percentage(std::string_view text) {
  std::string s(text::trim(text));
  if (!s.empty() && s.back() == '%') s.pop_back();
  s = std::string(text::trim(s));
  std::replace(s.begin(), s.end(), ',', '.');
  double value = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kParseError,
                "cannot parse percentage \"" + std::string(text) + "\"");
  }
  return value;
}

std::string format_percentage(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f %%", value);
  return buf;
}

}  // namespace guiground
