// Copyright 2026 The posbias Authors.
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

#ifndef POSBIAS_ERROR_H_
#define POSBIAS_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posbias {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input. `line()` is 1-based, 0 when the error is not tied to a
// specific line (e.g. "no sentences").
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error(line == 0 ? message
                        : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A value violates a documented precondition or invariant.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// A sequence does not fit into the configured maximum length.
class CapacityError : public Error {
 public:
  CapacityError(std::size_t required, std::size_t available)
      : Error("sequence needs " + std::to_string(required) +
              " positions but only " + std::to_string(available) +
              " are available"),
        required_(required),
        available_(available) {}

  std::size_t required() const { return required_; }
  std::size_t available() const { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

}  // namespace posbias

#endif  // POSBIAS_ERROR_H_
