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

#ifndef GUIGROUND_BACKENDS_HPP_
#define GUIGROUND_BACKENDS_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "guiground/pipeline.hpp"
#include "guiground/prediction.hpp"

namespace guiground {

enum class Capability { kBox, kPoint };

std::string_view to_string(Capability c);

// Anything that maps (screenshot, expression) to a prediction. The
// capability is fixed for the lifetime of the backend.
class GroundingBackend {
 public:
  virtual ~GroundingBackend() = default;

  virtual const std::string& id() const = 0;
  virtual Capability capability() const = 0;
  virtual std::size_t concurrency_limit() const = 0;

  // Returns a BoxPrediction for box backends and a PointPrediction for
  // point backends.
  virtual Prediction predict(std::string_view image,
                             std::string_view expression) const = 0;
};

inline Prediction direct_ground(const GroundingBackend& backend,
                                std::string_view image,
                                std::string_view expression) {
  return backend.predict(image, expression);
}

// Serves stored predictions of an external model, keyed by
// (image, expression). File format, one object per line:
//   {"image": "...", "expression": "...", "prediction": {"kind", "value"}}
// All predictions in one file must share a kind; it decides the capability.
class ReplayBackend final : public GroundingBackend {
 public:
  using Key = std::pair<std::string, std::string>;

  // Orders keys and allows lookups by a pair of string_views.
  struct KeyLess {
    using is_transparent = void;
    template <typename A, typename B>
    bool operator()(const A& a, const B& b) const {
      const std::string_view af(a.first), bf(b.first);
      if (af != bf) return af < bf;
      return std::string_view(a.second) < std::string_view(b.second);
    }
  };
  using Table = std::map<Key, Prediction, KeyLess>;

  ReplayBackend(std::string id, Table table, Capability capability);

  static ReplayBackend read(std::istream& in, std::string id);
  static ReplayBackend from_file(const std::filesystem::path& path,
                                 std::string id = {});

  const std::string& id() const override { return id_; }
  Capability capability() const override { return capability_; }
  std::size_t concurrency_limit() const override { return 1024; }

  // Throws kUnknownKey for pairs absent from the replay file.
  Prediction predict(std::string_view image,
                     std::string_view expression) const override;

  std::size_t size() const noexcept { return table_.size(); }

 private:
  std::string id_;
  Table table_;
  Capability capability_;
};

// The three-stage OCR pipeline exposed as a box backend; the expression is
// used as the instruction.
class PipelineBackend final : public GroundingBackend {
 public:
  explicit PipelineBackend(std::shared_ptr<const GroundingEngine> engine);

  const std::string& id() const override { return engine_->backend_id(); }
  Capability capability() const override { return Capability::kBox; }
  std::size_t concurrency_limit() const override {
    return engine_->matcher().concurrency_limit();
  }
  Prediction predict(std::string_view image,
                     std::string_view expression) const override;

  const GroundingEngine& engine() const { return *engine_; }

 private:
  std::shared_ptr<const GroundingEngine> engine_;
};

}  // namespace guiground

#endif  // GUIGROUND_BACKENDS_HPP_
