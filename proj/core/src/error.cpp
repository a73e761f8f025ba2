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

#include "guiground/error.hpp"

#include <cstdio>

namespace guiground {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kContractViolation: return "ContractViolation";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kInvalidSplitRatios: return "InvalidSplitRatios";
    case ErrorCode::kPlacementError: return "PlacementError";
    case ErrorCode::kUnknownImage: return "UnknownImage";
    case ErrorCode::kBackendUnavailable: return "BackendUnavailable";
    case ErrorCode::kEmptyInstruction: return "EmptyInstruction";
    case ErrorCode::kUnresolvableInstruction: return "UnresolvableInstruction";
    case ErrorCode::kNoElements: return "NoElements";
    case ErrorCode::kNoMatchAboveThreshold: return "NoMatchAboveThreshold";
    case ErrorCode::kUnknownKey: return "UnknownKey";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kMalformedReply: return "MalformedReply";
    case ErrorCode::kInvalidId: return "InvalidId";
    case ErrorCode::kTransport: return "Transport";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

namespace {

std::string no_match_message(double best, double threshold) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "best score %.4f is below threshold %.4f",
                best, threshold);
  return buf;
}

}  // namespace

NoMatchError::NoMatchError(double best_score, double threshold)
    : Error(ErrorCode::kNoMatchAboveThreshold,
            no_match_message(best_score, threshold)),
      best_score_(best_score) {}

RemoteError::RemoteError(ErrorCode code, const std::string& message,
                         int attempts)
    : Error(code, message + " (attempts: " + std::to_string(attempts) + ")"),
      attempts_(attempts) {}

}  // namespace guiground
