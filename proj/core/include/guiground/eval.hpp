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

#ifndef GUIGROUND_EVAL_HPP_
#define GUIGROUND_EVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "guiground/backends.hpp"
#include "guiground/category.hpp"
#include "guiground/dataset.hpp"
#include "guiground/prediction.hpp"

namespace guiground {

// Which expression(s) of a pair are sent to the backend.
struct ExpressionPolicy {
  enum class Kind { kFirst, kRandom, kAll };
  Kind kind = Kind::kFirst;
  std::uint64_t seed = 0;  // kRandom only

  std::string name() const;  // "first", "random:<seed>", "all"
  static ExpressionPolicy parse(std::string_view text, std::uint64_t seed = 0);
};

struct EvalRecord {
  std::size_t pair_index = 0;
  std::string expression;
  std::optional<Prediction> prediction;
  std::optional<double> iou;  // box predictions without error only
  bool cpv = false;
  std::optional<std::string> error;
};

struct ReportRow {
  std::optional<ElementCategory> category;  // empty for the Global row
  std::size_t n = 0;
  std::optional<double> miou;  // absent for point backends
  double cpv_rate = 0.0;       // percent

  std::string label() const;
};

struct EvalReport {
  std::string backend_id;
  Capability capability = Capability::kBox;
  std::string expression_policy = "first";
  std::string dataset_fingerprint;
  std::string timestamp;
  std::vector<ReportRow> rows;  // evaluation-table order, empty categories omitted
  ReportRow global;
};

struct AggregateResult {
  std::vector<ReportRow> rows;
  ReportRow global;
};

// Per-category and global mIoU / CPV. A record with an error counts as a
// miss (cpv false, iou 0 for box backends). Global is record-weighted.
// Sums are taken over sorted values so the result does not depend on
// record order.
AggregateResult aggregate(std::span<const EvalRecord> records,
                          std::span<const ElementCategory> pair_categories,
                          Capability capability);

struct EvalOptions {
  ExpressionPolicy policy;
  std::size_t jobs = 1;
  // Report timestamp; when empty the current UTC time is used, or
  // SOURCE_DATE_EPOCH when that variable is set.
  std::string timestamp;
};

struct Evaluation {
  EvalReport report;
  std::vector<EvalRecord> records;  // pair order, then expression order
};

// Runs the backend over every pair. Per-record failures are recorded and
// never abort the run. Uses min(jobs, backend.concurrency_limit()) threads.
Evaluation evaluate(std::span<const ImageExpressionsPair> pairs,
                    const GroundingBackend& backend,
                    const EvalOptions& options = {});

// Order-independent content hash, "fnv1a64:<16 hex digits>".
std::string dataset_fingerprint(std::span<const ImageExpressionsPair> pairs);

enum class ReportFormat { kMarkdown, kCsv, kJson };

ReportFormat parse_report_format(std::string_view text);

// Markdown mirrors the category-wise table ("-" for absent mIoU); CSV has
// columns category,n,miou,cpv_rate; JSON is lossless.
std::string render_report(const EvalReport& report, ReportFormat format);

void to_json(nlohmann::json& j, const EvalReport& r);
void from_json(const nlohmann::json& j, EvalReport& r);
EvalReport parse_report_json(std::string_view text);

// Table-style number formatting: at most two decimals, trailing zeros
// dropped ("0.67", "79.3", "100").
std::string format_table_number(double value);

std::string current_timestamp();

}  // namespace guiground

#endif  // GUIGROUND_EVAL_HPP_
