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

#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <climits>
#include <cstdlib>
#include <functional>
#include <future>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "guiground/error.hpp"
#include "guiground/remote_matcher.hpp"
#include "stub_server.hpp"
#include "temp_dir.hpp"

using namespace guiground;
using C = ElementCategory;

namespace {

const std::vector<ScreenElement> kElements = {
    {1, C::kButton, "Submit", {10, 10, 90, 40}},
    {2, C::kButton, "Cancel", {100, 10, 180, 40}},
    {3, C::kTextField, "Name", {10, 60, 210, 86}},
};

RemoteMatcherConfig config_for(const stub::Server& server) {
  RemoteMatcherConfig cfg;
  cfg.endpoint = server.endpoint();
  cfg.token_env.clear();
  cfg.timeout = std::chrono::milliseconds(2000);
  cfg.retries = 2;
  cfg.backoff = std::chrono::milliseconds(5);
  return cfg;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::kContractViolation;
}

}  // namespace

TEST_CASE("prompt rendering") {
  CHECK(serialize_element_list(kElements) ==
        "1 | Button | Submit | [10, 10, 90, 40]\n"
        "2 | Button | Cancel | [100, 10, 180, 40]\n"
        "3 | Text field | Name | [10, 60, 210, 86]");
  const auto prompt = render_prompt(default_prompt_template(), kElements,
                                    {C::kTextField, "name"});
  CHECK(prompt.find("3 | Text field | Name") != std::string::npos);
  CHECK(prompt.find("Type: Text field") != std::string::npos);
  CHECK(prompt.find("Role: name") != std::string::npos);
  CHECK(prompt.find("{{") == std::string::npos);
  CHECK(render_prompt("{{target_type}}/{{target_role}}", kElements,
                      {std::nullopt, ""}) == "any/(none)");

  RemoteMatcherConfig cfg;
  const auto body = build_request_body(cfg, "hello");
  CHECK(body.at("model") == "gpt-3.5-turbo");
  CHECK(body.at("temperature") == 0.0);
  CHECK(body.at("messages").at(0).at("content") == "hello");
  CHECK(body.at("messages").at(0).at("role") == "user");

  testing_util::TempDir dir;
  testing_util::write_file(dir / "t.txt", "pick {{target_role}}");
  CHECK(load_prompt_template(dir / "t.txt") == "pick {{target_role}}");
}

TEST_CASE("reply parsing") {
  CHECK(extract_reply_text(R"({"choices":[{"message":{"content":"2"}}]})") == "2");
  CHECK(extract_reply_text(R"({"choices":[{"text":"3"}]})") == "3");
  CHECK(extract_reply_text(R"({"content":"1"})") == "1");
  CHECK(extract_reply_text(R"("7")") == "7");
  CHECK(extract_reply_text("Element 2") == "Element 2");
  CHECK(extract_reply_text("3") == "3");
  CHECK_THROWS_AS(extract_reply_text(R"({"choices":[]})"), Error);

  CHECK(first_integer("the answer is element 7") == 7);
  CHECK(first_integer("-4 maybe") == -4);
  CHECK(first_integer("none") == std::nullopt);
  CHECK(first_integer("99999999999999999999999") == LLONG_MAX);

  CHECK(parse_selected_id("2", kElements) == 2);
  CHECK(parse_selected_id("Id: 3.", kElements) == 3);
  CHECK(code_of([] { parse_selected_id("the answer is element 7", kElements); }) ==
        ErrorCode::kInvalidId);
  CHECK(code_of([] { parse_selected_id("-1", kElements); }) == ErrorCode::kInvalidId);
  CHECK(code_of([] { parse_selected_id("0", kElements); }) == ErrorCode::kInvalidId);
  CHECK(code_of([] { parse_selected_id("I cannot tell", kElements); }) ==
        ErrorCode::kMalformedReply);
  CHECK(code_of([] { parse_selected_id("", kElements); }) == ErrorCode::kMalformedReply);
}

TEST_CASE("configuration checks happen before any request") {
  RemoteMatcherConfig cfg;
  CHECK(code_of([&] { check_remote_config(cfg); }) == ErrorCode::kBackendUnavailable);
  cfg.endpoint = "ftp://host/x";
  cfg.token_env.clear();
  CHECK(code_of([&] { check_remote_config(cfg); }) == ErrorCode::kBackendUnavailable);
  cfg.endpoint = "http://127.0.0.1:1/x";
  cfg.token_env = "GUIGROUND_TEST_SURELY_UNSET_VAR";
  CHECK(code_of([&] { check_remote_config(cfg); }) == ErrorCode::kBackendUnavailable);
  cfg.token_env.clear();
  cfg.retries = -1;
  CHECK(code_of([&] { check_remote_config(cfg); }) == ErrorCode::kBackendUnavailable);
}

TEST_CASE("stub replies") {
  SUBCASE("plain id") {
    stub::Server server([](const auto&, auto& res, int) { stub::Server::reply(res, "2"); });
    CHECK(remote_match(kElements, {C::kButton, "cancel"}, config_for(server)) == 2);
    const auto body = nlohmann::json::parse(server.last_body());
    CHECK(body.at("messages").at(0).at("content").get<std::string>().find(
              "2 | Button | Cancel") != std::string::npos);
    CHECK(server.last_auth().empty());
  }
  SUBCASE("out of range id") {
    stub::Server server([](const auto&, auto& res, int) {
      stub::Server::reply(res, "the answer is element 7");
    });
    CHECK(code_of([&] { remote_match(kElements, {}, config_for(server)); }) ==
          ErrorCode::kInvalidId);
    CHECK(server.calls() == 1);
  }
  SUBCASE("garbage") {
    stub::Server server([](const auto&, auto& res, int) {
      res.set_content("\x01\x02 not json at all", "text/plain");
    });
    CHECK(code_of([&] { remote_match(kElements, {}, config_for(server)); }) ==
          ErrorCode::kMalformedReply);
  }
  SUBCASE("json without content") {
    stub::Server server([](const auto&, auto& res, int) {
      res.set_content(R"({"error":"nope"})", "application/json");
    });
    CHECK(code_of([&] { remote_match(kElements, {}, config_for(server)); }) ==
          ErrorCode::kMalformedReply);
  }
  SUBCASE("bearer token from the environment") {
    ::setenv("GUIGROUND_TEST_TOKEN", "s3cret", 1);
    stub::Server server([](const auto&, auto& res, int) { stub::Server::reply(res, "1"); });
    auto cfg = config_for(server);
    cfg.token_env = "GUIGROUND_TEST_TOKEN";
    CHECK(remote_match(kElements, {}, cfg) == 1);
    CHECK(server.last_auth() == "Bearer s3cret");
    ::unsetenv("GUIGROUND_TEST_TOKEN");
  }
  SUBCASE("empty list") {
    stub::Server server([](const auto&, auto& res, int) { stub::Server::reply(res, "1"); });
    CHECK(code_of([&] {
            remote_match(std::vector<ScreenElement>{}, {}, config_for(server));
          }) == ErrorCode::kNoElements);
    CHECK(server.calls() == 0);
  }
}

TEST_CASE("retries and transport failures") {
  SUBCASE("server errors then success") {
    stub::Server server([](const auto&, auto& res, int call) {
      if (call < 3) {
        res.status = call == 1 ? 500 : 429;
        return;
      }
      stub::Server::reply(res, "3");
    });
    CHECK(remote_match(kElements, {}, config_for(server)) == 3);
    CHECK(server.calls() == 3);
  }
  SUBCASE("persistent server errors") {
    stub::Server server([](const auto&, auto& res, int) { res.status = 503; });
    try {
      remote_match(kElements, {}, config_for(server));
      FAIL("expected Transport");
    } catch (const RemoteError& e) {
      CHECK(e.code() == ErrorCode::kTransport);
      CHECK(e.attempts() == 3);
    }
    CHECK(server.calls() == 3);
  }
  SUBCASE("client errors are not retried") {
    stub::Server server([](const auto&, auto& res, int) { res.status = 401; });
    CHECK(code_of([&] { remote_match(kElements, {}, config_for(server)); }) ==
          ErrorCode::kTransport);
    CHECK(server.calls() == 1);
  }
  SUBCASE("timeouts") {
    stub::Server server([](const auto&, auto& res, int) {
      stub::sleep_ms(700);
      stub::Server::reply(res, "1");
    });
    auto cfg = config_for(server);
    cfg.timeout = std::chrono::milliseconds(150);
    cfg.retries = 1;
    const auto start = std::chrono::steady_clock::now();
    try {
      remote_match(kElements, {}, cfg);
      FAIL("expected Timeout");
    } catch (const RemoteError& e) {
      CHECK(e.code() == ErrorCode::kTimeout);
      CHECK(e.attempts() == 2);
    }
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(3));
  }
  SUBCASE("connection refused") {
    int port = 0;
    {
      stub::Server probe([](const auto&, auto&, int) {});
      port = std::stoi(probe.endpoint().substr(17));
    }
    RemoteMatcherConfig cfg;
    cfg.endpoint = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    cfg.token_env.clear();
    cfg.retries = 1;
    cfg.backoff = std::chrono::milliseconds(1);
    CHECK(code_of([&] { remote_match(kElements, {}, cfg); }) == ErrorCode::kTransport);
  }
}

TEST_CASE("remote matcher honors its concurrency limit") {
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
  stub::Server server([&](const auto&, auto& res, int) {
    const int now = ++in_flight;
    int seen = peak.load();
    while (now > seen && !peak.compare_exchange_weak(seen, now)) {
    }
    stub::sleep_ms(30);
    --in_flight;
    stub::Server::reply(res, "1");
  });
  auto cfg = config_for(server);
  cfg.concurrency = 2;
  RemoteMatcher matcher(cfg);
  CHECK(matcher.concurrency_limit() == 2);
  matcher.check_ready();
  std::vector<std::future<int>> futures;
  for (int i = 0; i < 8; ++i) {
    futures.push_back(std::async(std::launch::async, [&] {
      return matcher.select(kElements, {C::kButton, "submit"});
    }));
  }
  for (auto& f : futures) CHECK(f.get() == 1);
  CHECK(peak.load() <= 2);
  CHECK(server.calls() == 8);
}
