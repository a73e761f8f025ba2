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

#ifndef GUIGROUND_DATASET_HPP_
#define GUIGROUND_DATASET_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "guiground/category.hpp"
#include "guiground/error.hpp"
#include "guiground/geometry.hpp"
#include "guiground/random.hpp"

namespace guiground {

struct ImageSize {
  std::int64_t width = 0;
  std::int64_t height = 0;
  friend bool operator==(const ImageSize&, const ImageSize&) = default;
};

// One ground-truth element and the expressions that refer to it.
struct ImageExpressionsPair {
  std::string image;
  ImageSize size;
  BBox bbox;
  ElementCategory category = ElementCategory::kButton;
  std::vector<std::string> expressions;

  friend bool operator==(const ImageExpressionsPair&,
                         const ImageExpressionsPair&) = default;
};

struct Annotation {
  ElementCategory category = ElementCategory::kButton;
  BBox bbox;
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

// A screenshot annotated for detection training (any of the 14 categories).
struct DetectionExample {
  std::string image;
  ImageSize size;
  std::vector<Annotation> annotations;
  friend bool operator==(const DetectionExample&,
                         const DetectionExample&) = default;
};

enum class ViolationRule {
  kEmptyImageRef,
  kInvalidImageSize,
  kExpressionsEmpty,
  kEmptyExpression,
  kInvalidBox,
  kZeroAreaBox,
  kOutOfBounds,
  kCategoryNotEvaluable,
};

std::string_view to_string(ViolationRule rule);

struct Violation {
  std::size_t index = 0;  // record index, 0-based
  std::string field;
  ViolationRule rule = ViolationRule::kInvalidBox;
  std::string message;
};

// Thrown by the load_* functions when a well-formed record breaks an
// invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(Violation violation);
  const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

// JSON-lines I/O. One record per line; blank lines are skipped. read_*
// only checks structure (throws kParseError with the 1-based line number);
// load_* additionally validates and throws ValidationError.
std::vector<ImageExpressionsPair> read_pairs(std::istream& in);
std::vector<ImageExpressionsPair> load_pairs(const std::filesystem::path& path);
void write_pairs(std::ostream& out, std::span<const ImageExpressionsPair> pairs);
void save_pairs(const std::filesystem::path& path,
                std::span<const ImageExpressionsPair> pairs);

std::vector<DetectionExample> read_detection_examples(std::istream& in);
std::vector<DetectionExample> load_detection_examples(
    const std::filesystem::path& path);
void write_detection_examples(std::ostream& out,
                              std::span<const DetectionExample> examples);

void to_json(nlohmann::json& j, const ImageExpressionsPair& p);
void from_json(const nlohmann::json& j, ImageExpressionsPair& p);
void to_json(nlohmann::json& j, const DetectionExample& e);
void from_json(const nlohmann::json& j, DetectionExample& e);

// Canonical single-line serialization used for files and fingerprints.
std::string to_json_line(const ImageExpressionsPair& pair);

// Violations are data: an empty result means every record is valid.
std::vector<Violation> validate(std::span<const ImageExpressionsPair> pairs);
std::vector<Violation> validate(std::span<const DetectionExample> examples);

struct SplitSpec {
  std::array<double, 3> ratios = {0.8, 0.1, 0.1};  // train, val, test
  std::uint64_t seed = 0;

  // Throws kInvalidSplitRatios unless all ratios are non-negative, finite
  // and sum to 1 within 1e-9.
  void check() const;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
  friend bool operator==(const SplitSizes&, const SplitSizes&) = default;
};

// floor(n * train), floor(n * val), remainder to test.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

// Seeded Fisher-Yates permutation of [0, n).
std::vector<std::size_t> split_permutation(std::size_t n, std::uint64_t seed);

template <typename T>
struct Split {
  std::vector<T> train;
  std::vector<T> val;
  std::vector<T> test;
};

template <typename T>
Split<T> split(std::span<const T> items, const SplitSpec& spec) {
  const SplitSizes sizes = split_sizes(items.size(), spec);
  const auto order = split_permutation(items.size(), spec.seed);
  Split<T> out;
  out.train.reserve(sizes.train);
  out.val.reserve(sizes.val);
  out.test.reserve(sizes.test);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const T& item = items[order[k]];
    if (k < sizes.train) {
      out.train.push_back(item);
    } else if (k < sizes.train + sizes.val) {
      out.val.push_back(item);
    } else {
      out.test.push_back(item);
    }
  }
  return out;
}

std::array<double, 3> parse_ratios(std::string_view text);

struct CategoryShare {
  ElementCategory category = ElementCategory::kButton;
  std::size_t count = 0;
  double percentage = 0.0;  // rounded to 2 decimals
};

struct DistributionReport {
  std::vector<CategoryShare> rows;  // count descending, then category order
  std::size_t total = 0;

  const CategoryShare* find(ElementCategory c) const;
};

DistributionReport distribution(std::span<const ImageExpressionsPair> pairs);
DistributionReport distribution(std::span<const ElementCategory> categories);

// Accepts "17,80 %", "17.80%", "17.8". Throws kParseError otherwise.
double parse_percentage(std::string_view text);

// "17.80 %" style rendering with two decimals.
std::string format_percentage(double value);

}  // namespace guiground

#endif  // GUIGROUND_DATASET_HPP_
