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

#include "csv.hpp"

#include <algorithm>

#include "kpa/error.hpp"
#include "kpa/io.hpp"

namespace kpa::csv {

std::size_t Table::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    fail(ErrorKind::parse, source + ": missing column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

bool Table::has_column(std::string_view name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

Table parse(std::string_view content, std::string source) {
  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);

  Table table;
  table.source = std::move(source);
  std::vector<std::vector<std::string>> records;
  std::vector<std::size_t> record_lines;

  std::vector<std::string> fields;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  std::size_t line = 1;
  std::size_t record_line = 1;

  auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_record = [&] {
    end_field();
    const bool blank = fields.size() == 1 && fields[0].empty();
    if (!blank) {
      records.push_back(std::move(fields));
      record_lines.push_back(record_line);
    }
    fields.clear();
  };

  for (std::size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted) {
          fail(ErrorKind::parse, table.source + ":" + std::to_string(line) +
                                     ": unexpected quote inside unquoted field");
        }
        in_quotes = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        record_line = line;
        break;
      default:
        if (field_was_quoted) {
          fail(ErrorKind::parse, table.source + ":" + std::to_string(line) +
                                     ": characters after closing quote");
        }
        field.push_back(c);
    }
  }
  if (in_quotes) {
    fail(ErrorKind::parse,
         table.source + ":" + std::to_string(record_line) + ": unterminated quoted field");
  }
  if (!field.empty() || !fields.empty() || field_was_quoted) end_record();

  if (records.empty()) fail(ErrorKind::parse, table.source + ": missing header row");
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      fail(ErrorKind::parse, table.source + ":" + std::to_string(record_lines[r]) + ": expected " +
                                 std::to_string(table.header.size()) + " fields, found " +
                                 std::to_string(records[r].size()));
    }
    table.rows.push_back(Row{record_lines[r], std::move(records[r])});
  }
  return table;
}

Table read(const std::filesystem::path& file) {
  return parse(read_file(file), file.string());
}

std::string quote(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace kpa::csv
