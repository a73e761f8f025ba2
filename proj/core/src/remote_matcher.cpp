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

#include "guiground/remote_matcher.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "guiground/error.hpp"

namespace guiground {
namespace {

constexpr std::string_view kDefaultTemplate =
    "You are given a list of GUI elements detected on a desktop application "
    "screen.\n"
    "Each line describes one element as: Id | Type | Role | Coordinates "
    "[x_min, y_min, x_max, y_max].\n"
    "\n"
    "Elements:\n"
    "{{elements}}\n"
    "\n"
    "Target element:\n"
    "Type: {{target_type}}\n"
    "Role: {{target_role}}\n"
    "\n"
    "Select the element of the list that best matches the target element. "
    "Answer with the Id of that element only, without any other text.\n";

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

struct Endpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kBackendUnavailable,
                "endpoint must be an absolute http(s) URL: " + url);
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::kBackendUnavailable,
                "unsupported endpoint scheme \"" + scheme + "\"");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") {
    throw Error(ErrorCode::kBackendUnavailable,
                "https endpoints require a build with OpenSSL");
  }
#endif
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

std::string_view default_prompt_template() { return kDefaultTemplate; }

std::string load_prompt_template(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string serialize_element_list(std::span<const ScreenElement> elements) {
  std::string out;
  for (const auto& e : elements) {
    out += std::to_string(e.id);
    out += " | ";
    out += to_string(e.category);
    out += " | ";
    out += e.role;
    out += " | [" + format_number(e.bbox.x_min) + ", " +
           format_number(e.bbox.y_min) + ", " + format_number(e.bbox.x_max) +
           ", " + format_number(e.bbox.y_max) + "]\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

std::string render_prompt(std::string_view prompt_template,
                          std::span<const ScreenElement> elements,
                          const TargetDescriptor& target) {
  std::string out(prompt_template);
  replace_all(out, "{{elements}}", serialize_element_list(elements));
  replace_all(out, "{{target_type}}",
              target.category ? to_string(*target.category) : "any");
  replace_all(out, "{{target_role}}",
              target.role.empty() ? "(none)" : target.role);
  return out;
}

nlohmann::json build_request_body(const RemoteMatcherConfig& config,
                                  const std::string& prompt) {
  return nlohmann::json{
      {"model", config.model},
      {"messages", nlohmann::json::array(
                       {{{"role", "user"}, {"content", prompt}}})},
      {"temperature", config.temperature}};
}

std::string extract_reply_text(std::string_view body) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded()) return std::string(body);
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_object() && !j.is_array()) return std::string(body);
  if (j.is_object()) {
    if (auto c = j.find("choices");
        c != j.end() && c->is_array() && !c->empty()) {
      const auto& first = (*c)[0];
      if (first.is_object()) {
        if (auto m = first.find("message");
            m != first.end() && m->is_object()) {
          if (auto content = m->find("content");
              content != m->end() && content->is_string()) {
            return content->get<std::string>();
          }
        }
        if (auto t = first.find("text"); t != first.end() && t->is_string()) {
          return t->get<std::string>();
        }
      }
    }
    if (auto content = j.find("content");
        content != j.end() && content->is_string()) {
      return content->get<std::string>();
    }
  }
  throw Error(ErrorCode::kMalformedReply, "response carries no reply text");
}

std::optional<long long> first_integer(std::string_view text) {
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') continue;
    std::size_t start = i;
    if (start > 0 && text[start - 1] == '-') --start;
    std::size_t end = i;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    long long value = 0;
    auto [ptr, ec] =
        std::from_chars(text.data() + start, text.data() + end, value);
    if (ec == std::errc::result_out_of_range) {
      return text[start] == '-' ? LLONG_MIN : LLONG_MAX;
    }
    return value;
  }
  return std::nullopt;
}

int parse_selected_id(std::string_view reply,
                      std::span<const ScreenElement> elements) {
  const auto id = first_integer(reply);
  if (!id) {
    std::string shown(reply.substr(0, 80));
    throw Error(ErrorCode::kMalformedReply,
                "no element id in reply \"" + shown + "\"");
  }
  const bool known =
      std::any_of(elements.begin(), elements.end(),
                  [&](const ScreenElement& e) { return e.id == *id; });
  if (!known) {
    throw Error(ErrorCode::kInvalidId,
                "reply names element " + std::to_string(*id) +
                    ", which is not in the list");
  }
  return static_cast<int>(*id);
}

void check_remote_config(const RemoteMatcherConfig& config) {
  if (config.endpoint.empty()) {
    throw Error(ErrorCode::kBackendUnavailable,
                "remote matcher endpoint is not configured");
  }
  split_endpoint(config.endpoint);
  if (!config.token_env.empty() && !std::getenv(config.token_env.c_str())) {
    throw Error(ErrorCode::kBackendUnavailable,
                "environment variable " + config.token_env + " is not set");
  }
  if (config.retries < 0 || config.timeout.count() <= 0 ||
      config.concurrency == 0) {
    throw Error(ErrorCode::kBackendUnavailable,
                "retries, timeout and concurrency must be positive");
  }
}

int remote_match(std::span<const ScreenElement> elements,
                 const TargetDescriptor& target,
                 const RemoteMatcherConfig& config) {
  check_remote_config(config);
  if (elements.empty()) {
    throw Error(ErrorCode::kNoElements, "element list is empty");
  }
  const Endpoint ep = split_endpoint(config.endpoint);
  const std::string body =
      build_request_body(config,
                         render_prompt(config.prompt_template, elements, target))
          .dump();

  httplib::Headers headers;
  if (!config.token_env.empty()) {
    headers.emplace("Authorization",
                    std::string("Bearer ") + std::getenv(config.token_env.c_str()));
  }

  const auto timeout_us =
      std::chrono::duration_cast<std::chrono::microseconds>(config.timeout);
  auto backoff = config.backoff;
  ErrorCode last_code = ErrorCode::kTransport;
  std::string last_message;
  const int attempts_allowed = config.retries + 1;

  for (int attempt = 1; attempt <= attempts_allowed; ++attempt) {
    httplib::Client client(ep.base);
    const auto secs = timeout_us.count() / 1000000;
    const auto usecs = timeout_us.count() % 1000000;
    client.set_connection_timeout(secs, usecs);
    client.set_read_timeout(secs, usecs);
    client.set_write_timeout(secs, usecs);

    const auto start = std::chrono::steady_clock::now();
    auto res = client.Post(ep.path, headers, body, "application/json");
    const auto elapsed = std::chrono::steady_clock::now() - start;

    if (res) {
      if (res->status >= 200 && res->status < 300) {
        return parse_selected_id(extract_reply_text(res->body), elements);
      }
      last_code = ErrorCode::kTransport;
      last_message = "HTTP status " + std::to_string(res->status);
      if (!retryable_status(res->status)) {
        throw RemoteError(last_code, last_message, attempt);
      }
    } else {
      const auto err = res.error();
      const bool timed_out =
          err == httplib::Error::ConnectionTimeout ||
          (err == httplib::Error::Read && elapsed >= config.timeout * 9 / 10);
      last_code = timed_out ? ErrorCode::kTimeout : ErrorCode::kTransport;
      last_message = timed_out ? "request timed out"
                               : "transport error: " + httplib::to_string(err);
    }
    if (attempt < attempts_allowed) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw RemoteError(last_code, last_message, attempts_allowed);
}

struct RemoteMatcher::Gate {
  std::mutex mutex;
  std::condition_variable cv;
  std::size_t in_flight = 0;
};

RemoteMatcher::RemoteMatcher(RemoteMatcherConfig config)
    : config_(std::move(config)), gate_(std::make_unique<Gate>()) {
  if (config_.concurrency == 0) config_.concurrency = 1;
}

RemoteMatcher::~RemoteMatcher() = default;

void RemoteMatcher::check_ready() const { check_remote_config(config_); }

int RemoteMatcher::select(std::span<const ScreenElement> elements,
                          const TargetDescriptor& target) const {
  {
    std::unique_lock lock(gate_->mutex);
    gate_->cv.wait(lock, [&] { return gate_->in_flight < config_.concurrency; });
    ++gate_->in_flight;
  }
  struct Release {
    Gate& gate;
    ~Release() {
      {
        std::lock_guard lock(gate.mutex);
        --gate.in_flight;
      }
      gate.cv.notify_one();
    }
  } release{*gate_};
  return remote_match(elements, target, config_);
}

}  // namespace guiground
