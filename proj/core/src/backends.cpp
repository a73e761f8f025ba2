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

#include "guiground/backends.hpp"

#include <fstream>
#include <istream>
#include <optional>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"
#include "guiground/text.hpp"

namespace guiground {

std::string_view to_string(Capability c) {
  return c == Capability::kBox ? "box" : "point";
}

ReplayBackend::ReplayBackend(std::string id, Table table,
                             Capability capability)
    : id_(std::move(id)), table_(std::move(table)), capability_(capability) {
  for (auto& [key, pred] : table_) {
    const bool box = pred.is_box();
    if (box != (capability_ == Capability::kBox)) {
      throw Error(ErrorCode::kContractViolation,
                  "replay prediction kind does not match backend capability");
    }
    pred.backend_id = id_;
  }
}

ReplayBackend ReplayBackend::read(std::istream& in, std::string id) {
  Table table;
  std::optional<Capability> capability;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto fail = [&](const std::string& what) {
      return Error(ErrorCode::kParseError,
                   "line " + std::to_string(line_no) + ": " + what);
    };
    std::string image;
    std::string expression;
    Prediction pred;
    try {
      const auto j = nlohmann::json::parse(line);
      image = j.at("image").get<std::string>();
      expression = j.at("expression").get<std::string>();
      pred = j.at("prediction").get<Prediction>();
    } catch (const nlohmann::json::exception& e) {
      throw fail(e.what());
    } catch (const Error& e) {
      throw fail(e.what());
    }
    if (pred.is_box() && !pred.as_box().is_valid()) {
      throw fail("invalid box prediction");
    }
    const Capability kind =
        pred.is_box() ? Capability::kBox : Capability::kPoint;
    if (capability && *capability != kind) {
      throw fail("mixed box and point predictions in one replay file");
    }
    capability = kind;
    if (!table.emplace(Key{std::move(image), std::move(expression)},
                       std::move(pred))
             .second) {
      throw fail("duplicate (image, expression) key");
    }
  }
  return ReplayBackend(std::move(id), std::move(table),
                       capability.value_or(Capability::kBox));
}

ReplayBackend ReplayBackend::from_file(const std::filesystem::path& path,
                                       std::string id) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  if (id.empty()) id = "replay:" + path.filename().string();
  return read(in, std::move(id));
}

Prediction ReplayBackend::predict(std::string_view image,
                                  std::string_view expression) const {
  auto it = table_.find(std::pair(image, expression));
  if (it == table_.end()) {
    throw Error(ErrorCode::kUnknownKey, "no stored prediction for (\"" +
                                            std::string(image) + "\", \"" +
                                            std::string(expression) + "\")");
  }
  return it->second;
}

PipelineBackend::PipelineBackend(std::shared_ptr<const GroundingEngine> engine)
    : engine_(std::move(engine)) {
  if (!engine_) {
    throw Error(ErrorCode::kBackendUnavailable, "pipeline backend needs an engine");
  }
}

Prediction PipelineBackend::predict(std::string_view image,
                                    std::string_view expression) const {
  return engine_->ground(image, expression).prediction;
}

}  // namespace guiground
