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

#ifndef GUIGROUND_ERROR_HPP_
#define GUIGROUND_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace guiground {

// Every failure raised by the library carries one of these codes. The CLI
// maps them onto exit codes; tests match on them.
enum class ErrorCode {
  kContractViolation,
  kParseError,
  kInvariantViolation,
  kInvalidSplitRatios,
  kPlacementError,
  kUnknownImage,
  kBackendUnavailable,
  kEmptyInstruction,
  kUnresolvableInstruction,
  kNoElements,
  kNoMatchAboveThreshold,
  kUnknownKey,
  kTimeout,
  kMalformedReply,
  kInvalidId,
  kTransport,
  kIo,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  // Pipeline stage that raised the error, empty when not raised by ground().
  const std::string& stage() const noexcept { return stage_; }
  void set_stage(std::string stage) { stage_ = std::move(stage); }

 private:
  ErrorCode code_;
  std::string stage_;
};

// Raised by retrieval when no element reaches the acceptance threshold.
class NoMatchError : public Error {
 public:
  NoMatchError(double best_score, double threshold);
  double best_score() const noexcept { return best_score_; }

 private:
  double best_score_;
};

// Raised by the remote matcher; records how many HTTP attempts were made.
class RemoteError : public Error {
 public:
  RemoteError(ErrorCode code, const std::string& message, int attempts);
  int attempts() const noexcept { return attempts_; }

 private:
  int attempts_;
};

}  // namespace guiground

#endif  // GUIGROUND_ERROR_HPP_
