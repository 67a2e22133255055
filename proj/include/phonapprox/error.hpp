// Copyright 2026 The phonapprox Authors
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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace phonapprox {

// Malformed input data: table rows, inventory files, WAV bytes, CSVs.
// line() is 1-based; 0 when the error is not tied to a line.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Operands that do not belong together (vectors from different schemas,
// a vowel operation fed a consonant, ...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IpaParseError : public DataError {
 public:
  IpaParseError(std::size_t offset, std::string prefix)
      : DataError("unmatched IPA at byte " + std::to_string(offset) + ": \"" + prefix + "\""),
        offset_(offset),
        prefix_(std::move(prefix)) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::size_t offset_;
  std::string prefix_;
};

// Numerical failure: singular Levinson recursion, root finder divergence.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace phonapprox
