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

#include "cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "guiground/backends.hpp"
#include "guiground/dataset.hpp"
#include "guiground/error.hpp"
#include "guiground/eval.hpp"
#include "guiground/perception.hpp"
#include "guiground/pipeline.hpp"
#include "guiground/remote_matcher.hpp"
#include "guiground/synthgui.hpp"

namespace guiground::cli {
namespace {

namespace fs = std::filesystem;

// Everything a single invocation needs; filled by CLI11 from flags and the
// optional --config file.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string format = "markdown";
  std::string out;

  // validate / split / stats / evaluate / report input
  std::string input;
  std::string kind = "pairs";
  std::vector<std::string> ratios = {"0.8", "0.1", "0.1"};

  // gen-scenes
  std::size_t count = 10;
  std::size_t min_elements = 6;
  std::size_t max_elements = 14;
  std::size_t ambiguity = 0;
  std::string language = "en";
  std::string placement = "right";
  double jitter = 0.0;
  double drop = 0.0;
  double ocr_error = 0.0;

  // ground / evaluate
  std::string backend = "local";
  std::vector<std::string> fixtures;
  std::string image;
  std::string instruction;
  std::string policy = "first";
  std::size_t jobs = 1;
  std::string records;
  double detection_threshold = kDefaultDetectionThreshold;
  double text_threshold = kDefaultTextThreshold;
  double match_threshold = kDefaultMatchThreshold;

  // remote matcher
  std::string template_path;
  std::string endpoint;
  std::string model = "gpt-3.5-turbo";
  std::string token_env = "GUIGROUND_MATCHER_TOKEN";
  double temperature = 0.0;
  int timeout_ms = 30000;
  int retries = 2;
  std::size_t concurrency = 4;
};

// Raised for bad flag values detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError:
    case ErrorCode::kInvariantViolation:
    case ErrorCode::kIo:
    case ErrorCode::kPlacementError:
      return kExitDataViolation;
    case ErrorCode::kInvalidSplitRatios:
    case ErrorCode::kContractViolation:
      return kExitUsage;
    default:
      return kExitBackendFailure;
  }
}

// Writes to --out when given, else to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::kIo, "cannot write " + cfg.out);
  file << text;
}

std::vector<ImageExpressionsPair> read_pairs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return read_pairs(in);
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  std::ifstream in(cfg.input);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + cfg.input);
  std::vector<Violation> violations;
  std::size_t records = 0;
  if (cfg.kind == "pairs") {
    const auto pairs = read_pairs(in);
    records = pairs.size();
    violations = validate(pairs);
  } else if (cfg.kind == "detection") {
    const auto examples = read_detection_examples(in);
    records = examples.size();
    violations = validate(examples);
  } else {
    throw UsageError("--kind must be pairs or detection");
  }
  std::ostringstream text;
  for (const auto& v : violations) {
    text << "record " << v.index << ": " << v.field << ": "
         << to_string(v.rule) << " (" << v.message << ")\n";
  }
  text << records << " records, " << violations.size() << " violations\n";
  emit(cfg, out, text.str());
  return violations.empty() ? kExitOk : kExitDataViolation;
}

int cmd_split(const RunConfig& cfg, std::ostream& out) {
  SplitSpec spec;
  std::string joined;
  for (const auto& r : cfg.ratios) joined += (joined.empty() ? "" : ",") + r;
  spec.ratios = parse_ratios(joined);
  spec.seed = cfg.seed;
  spec.check();
  const auto pairs = read_pairs_file(cfg.input);
  const auto parts = split<ImageExpressionsPair>(pairs, spec);

  fs::path prefix = cfg.out.empty() ? fs::path(cfg.input).replace_extension()
                                    : fs::path(cfg.out);
  auto write = [&](const char* name, const std::vector<ImageExpressionsPair>& v) {
    fs::path p = prefix;
    p += std::string(".") + name + ".jsonl";
    save_pairs(p, v);
    out << name << ": " << v.size() << " -> " << p.string() << '\n';
  };
  write("train", parts.train);
  write("val", parts.val);
  write("test", parts.test);
  return kExitOk;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  const auto pairs = read_pairs_file(cfg.input);
  const auto report = distribution(pairs);
  const auto format = parse_report_format(cfg.format);
  std::ostringstream text;
  if (format == ReportFormat::kJson) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
      rows.push_back({{"category", r.category},
                      {"count", r.count},
                      {"percentage", r.percentage}});
    }
    text << nlohmann::json{{"rows", rows}, {"total", report.total}}.dump(2)
         << '\n';
  } else if (format == ReportFormat::kCsv) {
    text << "category,count,percentage\n";
    for (const auto& r : report.rows) {
      text << to_string(r.category) << ',' << r.count << ','
           << format_table_number(r.percentage) << '\n';
    }
    text << "Total," << report.total << ",100\n";
  } else {
    text << "| Category | Count | Percentage |\n|---|---:|---:|\n";
    for (const auto& r : report.rows) {
      text << "| " << to_string(r.category) << " | " << r.count << " | "
           << format_percentage(r.percentage) << " |\n";
    }
    text << "| Total | " << report.total << " | "
         << (report.total ? "100.00 %" : "0.00 %") << " |\n";
  }
  emit(cfg, out, text.str());
  return kExitOk;
}

int cmd_gen_scenes(const RunConfig& cfg, std::ostream& out) {
  if (cfg.out.empty()) throw UsageError("gen-scenes requires --out <dir>");
  synth::SceneConfig scene_cfg;
  scene_cfg.min_elements = cfg.min_elements;
  scene_cfg.max_elements = cfg.max_elements;
  scene_cfg.ambiguity = cfg.ambiguity;
  if (cfg.language == "en") {
    scene_cfg.language = synth::Language::kEnglish;
  } else if (cfg.language == "fr") {
    scene_cfg.language = synth::Language::kFrench;
  } else {
    throw UsageError("--language must be en or fr");
  }
  if (cfg.placement == "inside") {
    scene_cfg.placement = synth::LabelPlacement::kInside;
  } else if (cfg.placement == "right") {
    scene_cfg.placement = synth::LabelPlacement::kRight;
  } else if (cfg.placement == "left") {
    scene_cfg.placement = synth::LabelPlacement::kLeft;
  } else {
    throw UsageError("--placement must be inside, right or left");
  }
  synth::NoiseConfig noise{cfg.jitter, cfg.drop, cfg.ocr_error};

  const fs::path dir(cfg.out);
  fs::create_directories(dir);
  std::ofstream pairs_out(dir / "pairs.jsonl", std::ios::binary);
  std::ofstream det_out(dir / "detections.jsonl", std::ios::binary);
  std::ofstream span_out(dir / "spans.jsonl", std::ios::binary);
  std::ofstream scene_out(dir / "scenes.jsonl", std::ios::binary);
  if (!pairs_out || !det_out || !span_out || !scene_out) {
    throw Error(ErrorCode::kIo, "cannot write into " + dir.string());
  }
  std::size_t pair_count = 0;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const auto scene = synth::generate_scene(cfg.seed + i, scene_cfg);
    const auto gt = synth::emit_ground_truth(scene);
    const auto fx = synth::emit_fixtures(scene, noise);
    write_pairs(pairs_out, gt.pairs);
    write_detection_frames(det_out, std::span(&fx.detections, 1));
    write_text_frames(span_out, std::span(&fx.spans, 1));
    scene_out << nlohmann::json(scene).dump() << '\n';
    pair_count += gt.pairs.size();
  }
  out << cfg.count << " scenes, " << pair_count << " pairs -> "
      << dir.string() << '\n';
  return kExitOk;
}

RemoteMatcherConfig remote_config(const RunConfig& cfg) {
  RemoteMatcherConfig rc;
  rc.endpoint = cfg.endpoint;
  rc.model = cfg.model;
  rc.temperature = cfg.temperature;
  rc.token_env = cfg.token_env;
  rc.timeout = std::chrono::milliseconds(cfg.timeout_ms);
  rc.retries = cfg.retries;
  rc.concurrency = cfg.concurrency;
  if (!cfg.template_path.empty()) {
    rc.prompt_template = load_prompt_template(cfg.template_path);
  }
  return rc;
}

std::shared_ptr<const GroundingEngine> make_engine(const RunConfig& cfg,
                                                   bool remote) {
  if (cfg.fixtures.size() != 2) {
    throw UsageError("--fixtures <detections.jsonl> <spans.jsonl> is required");
  }
  auto detector = std::make_shared<FixtureDetector>(
      FixtureDetector::from_file(cfg.fixtures[0], cfg.detection_threshold));
  auto reader = std::make_shared<FixtureTextReader>(
      FixtureTextReader::from_file(cfg.fixtures[1], cfg.text_threshold));
  std::shared_ptr<const ElementMatcher> matcher;
  if (remote) {
    matcher = std::make_shared<RemoteMatcher>(remote_config(cfg));
    matcher->check_ready();
  } else {
    RetrieveOptions opts;
    opts.threshold = cfg.match_threshold;
    matcher = std::make_shared<LocalMatcher>(opts);
  }
  return std::make_shared<GroundingEngine>(
      std::move(detector), std::move(reader), std::move(matcher),
      remote ? "ivgocr-remote" : "ivgocr-local");
}

int cmd_ground(const RunConfig& cfg, std::ostream& out) {
  if (cfg.backend != "local" && cfg.backend != "remote") {
    throw UsageError("ground supports --backend local or remote");
  }
  const auto engine = make_engine(cfg, cfg.backend == "remote");
  const auto result = engine->ground(cfg.image, cfg.instruction);
  emit(cfg, out, nlohmann::json(result).dump(2) + "\n");
  return kExitOk;
}

std::unique_ptr<GroundingBackend> make_backend(const RunConfig& cfg) {
  if (cfg.backend == "local" || cfg.backend == "remote") {
    return std::make_unique<PipelineBackend>(
        make_engine(cfg, cfg.backend == "remote"));
  }
  constexpr std::string_view kReplay = "replay:";
  if (cfg.backend.starts_with(kReplay)) {
    return std::make_unique<ReplayBackend>(
        ReplayBackend::from_file(cfg.backend.substr(kReplay.size())));
  }
  throw UsageError("--backend must be local, remote or replay:<path>");
}

int cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
  const auto format = parse_report_format(cfg.format);
  const auto pairs = read_pairs_file(cfg.input);
  if (auto v = validate(pairs); !v.empty()) throw ValidationError(v.front());
  const auto backend = make_backend(cfg);

  EvalOptions opts;
  opts.policy = ExpressionPolicy::parse(cfg.policy, cfg.seed);
  opts.jobs = cfg.jobs;
  const auto evaluation = evaluate(pairs, *backend, opts);

  if (!cfg.records.empty()) {
    std::ofstream rec(cfg.records, std::ios::binary | std::ios::trunc);
    if (!rec) throw Error(ErrorCode::kIo, "cannot write " + cfg.records);
    for (const auto& r : evaluation.records) {
      nlohmann::json j{{"pair", r.pair_index},
                       {"expression", r.expression},
                       {"cpv", r.cpv}};
      j["prediction"] = r.prediction ? nlohmann::json(*r.prediction)
                                     : nlohmann::json(nullptr);
      j["iou"] = r.iou ? nlohmann::json(*r.iou) : nlohmann::json(nullptr);
      j["error"] = r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr);
      rec << j.dump() << '\n';
    }
  }
  emit(cfg, out, render_report(evaluation.report, format));
  return kExitOk;
}

int cmd_report(const RunConfig& cfg, std::ostream& out) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + cfg.input);
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto report = parse_report_json(ss.str());
  emit(cfg, out, render_report(report, parse_report_format(cfg.format)));
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"GUI instruction grounding toolkit: datasets, synthetic "
               "scenes, grounding and evaluation",
               "guiground"};
  app.set_config("--config", "", "INI/TOML file with default option values");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "Seed for all randomized behavior")
      ->capture_default_str();

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "markdown, csv or json")
        ->check(CLI::IsMember({"markdown", "md", "csv", "json"}))
        ->capture_default_str();
  };
  auto add_out = [&](CLI::App* sub, const char* what) {
    return sub->add_option("--out", cfg.out, what);
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check dataset invariants");
  validate_cmd->add_option("input", cfg.input, "JSON-lines dataset")->required();
  validate_cmd->add_option("--kind", cfg.kind, "pairs or detection")
      ->check(CLI::IsMember({"pairs", "detection"}))
      ->capture_default_str();
  add_out(validate_cmd, "Write the violation list here");

  auto* split_cmd = app.add_subcommand("split", "Seeded train/val/test split");
  split_cmd->add_option("input", cfg.input, "JSON-lines pairs file")->required();
  split_cmd->add_option("--ratios", cfg.ratios, "train,val,test ratios")
      ->delimiter(',')
      ->allow_extra_args(false)
      ->default_str("0.8,0.1,0.1");
  add_out(split_cmd, "Output prefix (default: input path without extension)");

  auto* stats_cmd = app.add_subcommand("stats", "Category distribution");
  stats_cmd->add_option("input", cfg.input, "JSON-lines pairs file")->required();
  add_format(stats_cmd);
  add_out(stats_cmd, "Write the table here");

  auto* gen_cmd = app.add_subcommand("gen-scenes", "Generate synthetic scenes");
  gen_cmd->add_option("--count", cfg.count, "Number of scenes")->capture_default_str();
  gen_cmd->add_option("--min-elements", cfg.min_elements)->capture_default_str();
  gen_cmd->add_option("--max-elements", cfg.max_elements)->capture_default_str();
  gen_cmd->add_option("--ambiguity", cfg.ambiguity,
                      "Groups of two elements sharing a role")
      ->capture_default_str();
  gen_cmd->add_option("--language", cfg.language, "en or fr")->capture_default_str();
  gen_cmd->add_option("--placement", cfg.placement, "inside, right or left")
      ->capture_default_str();
  gen_cmd->add_option("--jitter", cfg.jitter, "Box jitter sigma in pixels");
  gen_cmd->add_option("--drop", cfg.drop, "Detection drop probability");
  gen_cmd->add_option("--ocr-error", cfg.ocr_error, "OCR character error rate");
  add_out(gen_cmd, "Output directory")->required();

  auto add_backend_options = [&](CLI::App* sub) {
    sub->add_option("--fixtures", cfg.fixtures,
                    "Detection and text-span fixture files")
        ->expected(2)
        ->allow_extra_args(false);
    sub->add_option("--template", cfg.template_path, "Prompt template file");
    sub->add_option("--endpoint", cfg.endpoint, "Remote matcher URL");
    sub->add_option("--model", cfg.model)->capture_default_str();
    sub->add_option("--token-env", cfg.token_env,
                    "Environment variable with the matcher token")
        ->capture_default_str();
    sub->add_option("--temperature", cfg.temperature)->capture_default_str();
    sub->add_option("--timeout-ms", cfg.timeout_ms)->capture_default_str();
    sub->add_option("--retries", cfg.retries)->capture_default_str();
    sub->add_option("--concurrency", cfg.concurrency)->capture_default_str();
    sub->add_option("--detection-threshold", cfg.detection_threshold)
        ->capture_default_str();
    sub->add_option("--text-threshold", cfg.text_threshold)->capture_default_str();
    sub->add_option("--match-threshold", cfg.match_threshold)
        ->capture_default_str();
  };

  auto* ground_cmd = app.add_subcommand("ground", "Ground one instruction");
  ground_cmd->add_option("instruction", cfg.instruction)->required();
  ground_cmd->add_option("--image", cfg.image, "Image reference")->required();
  ground_cmd->add_option("--backend", cfg.backend, "local or remote")
      ->capture_default_str();
  add_backend_options(ground_cmd);
  add_out(ground_cmd, "Write the result JSON here");

  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a backend");
  eval_cmd->add_option("input", cfg.input, "JSON-lines pairs file")->required();
  eval_cmd->add_option("--backend", cfg.backend, "local, remote or replay:<path>")
      ->capture_default_str();
  eval_cmd->add_option("--policy", cfg.policy, "first, random or all")
      ->check(CLI::IsMember({"first", "random", "all"}))
      ->capture_default_str();
  eval_cmd->add_option("--jobs", cfg.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval_cmd->add_option("--records", cfg.records, "Write per-record JSON lines here");
  add_backend_options(eval_cmd);
  add_format(eval_cmd);
  add_out(eval_cmd, "Write the report here");

  auto* report_cmd = app.add_subcommand("report", "Render a JSON report");
  report_cmd->add_option("input", cfg.input, "Report JSON")->required();
  add_format(report_cmd);
  add_out(report_cmd, "Write the rendering here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(cfg, out);
    if (split_cmd->parsed()) return cmd_split(cfg, out);
    if (stats_cmd->parsed()) return cmd_stats(cfg, out);
    if (gen_cmd->parsed()) return cmd_gen_scenes(cfg, out);
    if (ground_cmd->parsed()) return cmd_ground(cfg, out);
    if (eval_cmd->parsed()) return cmd_evaluate(cfg, out);
    if (report_cmd->parsed()) return cmd_report(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: ";
    if (!e.stage().empty()) err << "[" << e.stage() << "] ";
    err << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDataViolation;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace guiground::cli
