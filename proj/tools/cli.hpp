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

#ifndef GUIGROUND_TOOLS_CLI_HPP_
#define GUIGROUND_TOOLS_CLI_HPP_

#include <iosfwd>

namespace guiground::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBackendFailure = 3;

// Entry point of the `guiground` tool. Subcommands: validate, split, stats,
// gen-scenes, ground, evaluate, report.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace guiground::cli

#endif  // GUIGROUND_TOOLS_CLI_HPP_
