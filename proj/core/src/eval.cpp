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

#include "guiground/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"
#include "guiground/random.hpp"

namespace guiground {
namespace {

using nlohmann::json;

double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum;
}

ReportRow make_row(std::optional<ElementCategory> category,
                   std::vector<double> ious, std::size_t n,
                   std::size_t cpv_hits, Capability capability) {
  ReportRow row;
  row.category = category;
  row.n = n;
  if (n == 0) return row;
  if (capability == Capability::kBox) {
    row.miou = sorted_sum(std::move(ious)) / static_cast<double>(n);
  }
  row.cpv_rate = 100.0 * static_cast<double>(cpv_hits) / static_cast<double>(n);
  return row;
}

std::vector<ElementCategory> row_order() {
  std::vector<ElementCategory> order(evaluation_categories().begin(),
                                     evaluation_categories().end());
  for (auto c : all_categories()) {
    if (!is_evaluation_category(c)) order.push_back(c);
  }
  return order;
}

std::string format_timestamp(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json row_json(const ReportRow& r) {
  return json{{"category", r.label()},
              {"n", r.n},
              {"miou", r.miou ? json(*r.miou) : json(nullptr)},
              {"cpv_rate", r.cpv_rate}};
}

ReportRow row_from_json(const json& j, bool global) {
  ReportRow r;
  const auto label = j.at("category").get<std::string>();
  if (!global) {
    auto c = category_from_string(label);
    if (!c) throw Error(ErrorCode::kParseError, "unknown category " + label);
    r.category = *c;
  }
  r.n = j.at("n").get<std::size_t>();
  if (!j.at("miou").is_null()) r.miou = j.at("miou").get<double>();
  r.cpv_rate = j.at("cpv_rate").get<double>();
  return r;
}

std::string csv_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string ExpressionPolicy::name() const {
  switch (kind) {
    case Kind::kFirst: return "first";
    case Kind::kRandom: return "random:" + std::to_string(seed);
    case Kind::kAll: return "all";
  }
  return "first";
}

ExpressionPolicy ExpressionPolicy::parse(std::string_view text,
                                         std::uint64_t seed) {
  if (text == "first") return {Kind::kFirst, seed};
  if (text == "random") return {Kind::kRandom, seed};
  if (text == "all") return {Kind::kAll, seed};
  throw Error(ErrorCode::kContractViolation,
              "expression policy must be first, random or all");
}

std::string ReportRow::label() const {
  return category ? std::string(to_string(*category)) : "Global";
}

AggregateResult aggregate(std::span<const EvalRecord> records,
                          std::span<const ElementCategory> pair_categories,
                          Capability capability) {
  std::array<std::vector<double>, kCategoryCount> ious;
  std::array<std::size_t, kCategoryCount> counts{};
  std::array<std::size_t, kCategoryCount> hits{};
  std::vector<double> all_ious;
  std::size_t all_hits = 0;

  for (const auto& r : records) {
    if (r.pair_index >= pair_categories.size()) {
      throw Error(ErrorCode::kContractViolation,
                  "record refers to pair " + std::to_string(r.pair_index) +
                      " outside the category list");
    }
    const auto k = index_of(pair_categories[r.pair_index]);
    const bool hit = r.cpv && !r.error;
    const double iou = (r.error || !r.iou) ? 0.0 : *r.iou;
    ++counts[k];
    hits[k] += hit;
    all_hits += hit;
    ious[k].push_back(iou);
    all_ious.push_back(iou);
  }

  AggregateResult out;
  for (auto c : row_order()) {
    const auto k = index_of(c);
    if (counts[k] == 0) continue;
    out.rows.push_back(
        make_row(c, std::move(ious[k]), counts[k], hits[k], capability));
  }
  out.global = make_row(std::nullopt, std::move(all_ious), records.size(),
                        all_hits, capability);
  return out;
}

std::string current_timestamp() {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long v = std::strtoll(epoch, &end, 10);
    if (end != epoch && *end == '\0') {
      return format_timestamp(static_cast<std::time_t>(v));
    }
  }
  return format_timestamp(std::time(nullptr));
}

std::string dataset_fingerprint(std::span<const ImageExpressionsPair> pairs) {
  std::vector<std::uint64_t> hashes;
  hashes.reserve(pairs.size());
  for (const auto& p : pairs) hashes.push_back(fnv1a(to_json_line(p)));
  std::sort(hashes.begin(), hashes.end());
  std::uint64_t h = fnv1a("guiground-dataset");
  for (auto v : hashes) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

Evaluation evaluate(std::span<const ImageExpressionsPair> pairs,
                    const GroundingBackend& backend,
                    const EvalOptions& options) {
  struct Task {
    std::size_t pair_index;
    std::string expression;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& ex = pairs[i].expressions;
    if (ex.empty()) {
      tasks.push_back({i, std::string()});
      continue;
    }
    switch (options.policy.kind) {
      case ExpressionPolicy::Kind::kFirst:
        tasks.push_back({i, ex.front()});
        break;
      case ExpressionPolicy::Kind::kRandom: {
        // Seeded by content, not position, so permuting pairs changes
        // nothing.
        Rng rng(mix_seed(options.policy.seed, fnv1a(to_json_line(pairs[i]))));
        tasks.push_back({i, ex[rng.index(ex.size())]});
        break;
      }
      case ExpressionPolicy::Kind::kAll:
        for (const auto& e : ex) tasks.push_back({i, e});
        break;
    }
  }

  std::vector<EvalRecord> records(tasks.size());
  auto run_task = [&](std::size_t t) {
    const Task& task = tasks[t];
    const ImageExpressionsPair& pair = pairs[task.pair_index];
    EvalRecord& rec = records[t];
    rec.pair_index = task.pair_index;
    rec.expression = task.expression;
    try {
      if (task.expression.empty()) {
        throw Error(ErrorCode::kContractViolation, "pair has no expressions");
      }
      Prediction pred = backend.predict(pair.image, task.expression);
      rec.cpv = cpv(pred, pair.bbox);
      if (pred.is_box()) rec.iou = iou(pred.as_box(), pair.bbox);
      rec.prediction = std::move(pred);
    } catch (const Error& e) {
      rec.error = e.stage().empty() ? e.what() : e.stage() + ": " + e.what();
      rec.cpv = false;
      rec.iou.reset();
    } catch (const std::exception& e) {
      rec.error = e.what();
      rec.cpv = false;
      rec.iou.reset();
    }
  };

  const std::size_t workers = std::max<std::size_t>(
      1, std::min({options.jobs, backend.concurrency_limit(), tasks.size()}));
  if (workers <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (std::size_t t = next++; t < tasks.size(); t = next++) run_task(t);
      });
    }
  }

  std::vector<ElementCategory> categories;
  categories.reserve(pairs.size());
  for (const auto& p : pairs) categories.push_back(p.category);
  auto agg = aggregate(records, categories, backend.capability());

  Evaluation out;
  out.report.backend_id = backend.id();
  out.report.capability = backend.capability();
  out.report.expression_policy = options.policy.name();
  out.report.dataset_fingerprint = dataset_fingerprint(pairs);
  out.report.timestamp =
      options.timestamp.empty() ? current_timestamp() : options.timestamp;
  out.report.rows = std::move(agg.rows);
  out.report.global = std::move(agg.global);
  out.records = std::move(records);
  return out;
}

ReportFormat parse_report_format(std::string_view text) {
  if (text == "markdown" || text == "md") return ReportFormat::kMarkdown;
  if (text == "csv") return ReportFormat::kCsv;
  if (text == "json") return ReportFormat::kJson;
  throw Error(ErrorCode::kContractViolation,
              "format must be markdown, csv or json");
}

std::string format_table_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  std::string s(buf);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

std::string render_report(const EvalReport& report, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kMarkdown: {
      auto line = [&](const ReportRow& r) {
        out << "| " << r.label() << " | " << r.n << " | "
            << (r.miou ? format_table_number(*r.miou) : "-") << " | "
            << format_table_number(r.cpv_rate) << " % |\n";
      };
      out << "| Category | n | mIoU | CPV |\n";
      out << "|---|---:|---:|---:|\n";
      for (const auto& r : report.rows) line(r);
      line(report.global);
      out << "\nBackend: " << report.backend_id << " ("
          << to_string(report.capability)
          << "), expression policy: " << report.expression_policy
          << ", dataset: " << report.dataset_fingerprint << "\n";
      break;
    }
    case ReportFormat::kCsv: {
      auto line = [&](const ReportRow& r) {
        out << r.label() << ',' << r.n << ','
            << (r.miou ? csv_number(*r.miou) : std::string()) << ','
            << csv_number(r.cpv_rate) << '\n';
      };
      out << "category,n,miou,cpv_rate\n";
      for (const auto& r : report.rows) line(r);
      line(report.global);
      break;
    }
    case ReportFormat::kJson:
      out << json(report).dump(2) << '\n';
      break;
  }
  return out.str();
}

void to_json(json& j, const EvalReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(row_json(row));
  j = json{{"backend_id", r.backend_id},
           {"capability", std::string(to_string(r.capability))},
           {"expression_policy", r.expression_policy},
           {"dataset_fingerprint", r.dataset_fingerprint},
           {"timestamp", r.timestamp},
           {"rows", std::move(rows)},
           {"global", row_json(r.global)}};
}

void from_json(const json& j, EvalReport& r) {
  r.backend_id = j.at("backend_id").get<std::string>();
  const auto cap = j.at("capability").get<std::string>();
  if (cap != "box" && cap != "point") {
    throw Error(ErrorCode::kParseError, "capability must be box or point");
  }
  r.capability = cap == "box" ? Capability::kBox : Capability::kPoint;
  r.expression_policy = j.at("expression_policy").get<std::string>();
  r.dataset_fingerprint = j.at("dataset_fingerprint").get<std::string>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.rows.clear();
  for (const auto& row : j.at("rows")) r.rows.push_back(row_from_json(row, false));
  r.global = row_from_json(j.at("global"), true);
}

EvalReport parse_report_json(std::string_view text) {
  try {
    return json::parse(text).get<EvalReport>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("report: ") + e.what());
  }
}

}  // namespace guiground
