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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kpa {

/// Number of whitespace-separated tokens. Throws ErrorKind::input on text
/// that is empty after trimming.
std::size_t word_count(std::string_view text);

std::string_view trim(std::string_view text);

std::vector<std::string> split_whitespace(std::string_view text);

/// Lowercased tokens with every non-alphanumeric ASCII byte treated as a
/// separator. Used by ROUGE and the lexical backends.
std::vector<std::string> alnum_tokens(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace kpa
