// Copyright 2026 The affinv Authors
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

#ifndef AFFINV_TOOLS_CLI_HPP_
#define AFFINV_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace affinv::cli {

// Exit codes are part of the tool's contract.
enum ExitCode : int {
  kExitOk = 0,
  kExitPropertyFailure = 1,
  kExitUnrecognizedKernel = 2,
  kExitUsage = 64,
  kExitInputContract = 65,
};

// Runs one invocation. `args` excludes the program name. Reports go to
// `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "1..6", "2,3,5" or "4".
std::vector<int> parse_dims(const std::string& text);

}  // namespace affinv::cli

#endif  // AFFINV_TOOLS_CLI_HPP_
