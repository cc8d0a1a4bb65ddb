// Copyright 2026 The Hyra Authors
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


#ifndef HYRA_CLI_HPP_
#define HYRA_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace hyra {

// Exit codes of the `hyra` tool.
enum ExitCode : int {
  kExitOk = 0,              // success, or SafeProved
  kExitPossiblyUnsafe = 1,
  kExitInputError = 2,      // unreadable, malformed or invalid input
  kExitEngineError = 3,     // StepTooLarge, Overflow, ...
};

// Runs one command. `args` excludes the program name. Results go to `out`,
// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 2-d projection of a segments CSV (boxes) or trajectory CSV (polylines).
std::string plot_svg(const std::string& csv, const std::string& x, const std::string& y);
std::string plot_csv(const std::string& csv, const std::string& x, const std::string& y);

}  // namespace hyra

#endif  // HYRA_CLI_HPP_
