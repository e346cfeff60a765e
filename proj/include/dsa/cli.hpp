// Copyright 2026 The dsa Authors.
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

#ifndef DSA_CLI_HPP
#define DSA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dsa::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kInvalidArguments = 1,
  kDataError = 2,
  kNumericalError = 3,
};

/// Entry point shared by the `dsa` binary and the tests. `args` excludes the
/// program name. Failures print one line `dsa: error[<kind>]: <reason>` to
/// `err` and return the matching exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsa::cli

#endif  // DSA_CLI_HPP
