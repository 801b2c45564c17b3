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

namespace kpa::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

struct Table {
  std::string source;
  std::vector<std::string> header;
  std::vector<Row> rows;

  /// Column position by header name; throws ErrorKind::parse when absent.
  std::size_t column(std::string_view name) const;
  bool has_column(std::string_view name) const;
};

/// RFC 4180 reader: quoted fields may hold commas, doubled quotes and
/// newlines. A leading UTF-8 BOM and CRLF line ends are accepted.
Table parse(std::string_view content, std::string source);
Table read(const std::filesystem::path& file);

std::string quote(std::string_view field);

}  // namespace kpa::csv
