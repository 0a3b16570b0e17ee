// Copyright 2026 The glossary-matcher Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GMATCH_ERRORS_HPP_
#define GMATCH_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gmatch {

// Base for every error raised by the library. Callers that only care about
// "something went wrong" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied a value that violates an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A remote embedding or LLM endpoint could not be reached or kept failing.
class BackendUnavailable : public Error {
 public:
  using Error::Error;
};

// Strict scripted LLM received a prompt that no rule covers.
class UnscriptedPrompt : public Error {
 public:
  using Error::Error;
};

// Malformed input file. `line` is 1-based; 0 when the error is not tied to a
// particular line.
class IngestError : public Error {
 public:
  IngestError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace gmatch

#endif  // GMATCH_ERRORS_HPP_
