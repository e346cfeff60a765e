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

#ifndef DSA_ERRORS_HPP
#define DSA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dsa {

/// Malformed or inconsistent input data (bad rows, missing days, invariant
/// violations in domain types).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
  DataError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  /// 1-based line number in the source file, 0 when not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_ = 0;
};

/// A computation that cannot produce a finite answer: rank deficiency,
/// zero variance, auctions that never close.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dsa

#endif  // DSA_ERRORS_HPP
