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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace kpa {

/// Whole-file read; ErrorKind::input when the file cannot be opened.
std::string read_file(const std::filesystem::path& file);

/// Writes to a sibling temporary file and renames it over `file`.
void write_file_atomic(const std::filesystem::path& file, std::string_view content);

/// One JSON document per non-blank line; parse errors carry the line number.
std::vector<nlohmann::json> read_jsonl(const std::filesystem::path& file);

}  // namespace kpa
