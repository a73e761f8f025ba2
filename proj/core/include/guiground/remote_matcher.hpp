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

#ifndef GUIGROUND_REMOTE_MATCHER_HPP_
#define GUIGROUND_REMOTE_MATCHER_HPP_

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

#include "guiground/element.hpp"
#include "guiground/pipeline.hpp"

namespace guiground {

// Built-in prompt. Placeholders: {{elements}}, {{target_type}},
// {{target_role}}. Override it with a template file.
std::string_view default_prompt_template();

std::string load_prompt_template(const std::filesystem::path& path);

struct RemoteMatcherConfig {
  // Chat-completion URL, e.g. http://127.0.0.1:8080/v1/chat/completions.
  std::string endpoint;
  std::string model = "gpt-3.5-turbo";
  double temperature = 0.0;
  // Environment variable holding the bearer token. Empty disables auth.
  std::string token_env = "GUIGROUND_MATCHER_TOKEN";
  std::string prompt_template = std::string(default_prompt_template());
  std::chrono::milliseconds timeout{30000};
  int retries = 2;
  std::chrono::milliseconds backoff{500};  // doubles after every retry
  std::size_t concurrency = 4;             // max in-flight requests
};

// One line per element: "<id> | <category> | <role> | [x0, y0, x1, y1]".
std::string serialize_element_list(std::span<const ScreenElement> elements);

std::string render_prompt(std::string_view prompt_template,
                          std::span<const ScreenElement> elements,
                          const TargetDescriptor& target);

// {"model", "messages": [{"role": "user", "content": prompt}], "temperature"}
nlohmann::json build_request_body(const RemoteMatcherConfig& config,
                                  const std::string& prompt);

// Assistant text of a chat-completion response; falls back to a bare
// "content" field, a JSON string, or the raw body.
std::string extract_reply_text(std::string_view body);

// First (optionally signed) integer in the text.
std::optional<long long> first_integer(std::string_view text);

// Throws kMalformedReply when the reply has no integer and kInvalidId when
// the integer is not an id of `elements`.
int parse_selected_id(std::string_view reply,
                      std::span<const ScreenElement> elements);

// Sends one prompt (with retries on timeouts, connection failures, 429 and
// 5xx) and returns the chosen element id. Errors: kBackendUnavailable for
// missing configuration, RemoteError(kTimeout | kTransport) once retries are
// exhausted, kMalformedReply, kInvalidId.
int remote_match(std::span<const ScreenElement> elements,
                 const TargetDescriptor& target,
                 const RemoteMatcherConfig& config);

// Throws kBackendUnavailable when endpoint or token are missing.
void check_remote_config(const RemoteMatcherConfig& config);

// remote_match behind the ElementMatcher interface, limited to
// config.concurrency requests in flight.
class RemoteMatcher final : public ElementMatcher {
 public:
  explicit RemoteMatcher(RemoteMatcherConfig config);
  ~RemoteMatcher() override;

  std::string_view name() const override { return "remote"; }
  void check_ready() const override;
  int select(std::span<const ScreenElement> elements,
             const TargetDescriptor& target) const override;
  std::size_t concurrency_limit() const override {
    return config_.concurrency;
  }

  const RemoteMatcherConfig& config() const { return config_; }

 private:
  struct Gate;
  RemoteMatcherConfig config_;
  std::unique_ptr<Gate> gate_;
};

}  // namespace guiground

#endif  // GUIGROUND_REMOTE_MATCHER_HPP_
