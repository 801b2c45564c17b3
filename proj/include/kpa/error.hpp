// Copyright 2026 The kpa Authors.
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

#include <stdexcept>
#include <string>
#include <string_view>

namespace kpa {

enum class ErrorKind {
  parse,      // malformed input row / document
  integrity,  // referential integrity or duplicate ids
  input,      // missing files, bad arguments, empty inputs
  format,     // well-formed but inconsistent data (e.g. dimension mismatch)
  coverage,   // backend data does not cover the requested ids
  lookup,     // a requested pair is absent from a precomputed table
  usage,      // API misuse (e.g. oracle matcher without ids)
  capacity,   // not enough data to satisfy a sampling request
  transport,  // remote backend failure
  internal,   // invariant violation inside the library
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace kpa
