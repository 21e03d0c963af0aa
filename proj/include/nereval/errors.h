// Copyright 2026 The nereval Authors.
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

#ifndef NEREVAL_ERRORS_H_
#define NEREVAL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace nereval {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &message) : std::runtime_error(message) {}
};

// Malformed input. Carries the 1-based line number when one is known
// (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(const std::string &message, int line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + message
                       : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Gold and predicted corpora cannot be lined up.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// A precondition of an operation does not hold (e.g. overlapping
// mentions handed to the matcher, or invalid configuration).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Type-5 records lack a decision or judgement that the operation needs.
class CoverageError : public Error {
 public:
  using Error::Error;
};

}  // namespace nereval

#endif  // NEREVAL_ERRORS_H_
