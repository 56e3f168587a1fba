// Copyright 2026 The Fairlens Authors
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

#ifndef FAIRLENS_CSV_H_
#define FAIRLENS_CSV_H_

// Minimal RFC 4180 reader/writer plus the file helpers used by every loader.
// Lines starting with '#' outside a quoted field are treated as comments.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "fairlens/error.h"

namespace fairlens {

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::kIo, "short write to '" + path + "'");
}

// Splits on LF, dropping a trailing CR from each line.
inline std::vector<std::string_view> SplitLines(std::string_view contents) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < contents.size()) {
    size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

struct CsvRow {
  size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<CsvRow> rows;

  // Column index by name, or -1.
  int Column(std::string_view name) const {
    for (size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
};

inline std::vector<CsvRow> ParseCsvRecords(std::string_view contents,
                                           const std::string& source) {
  std::vector<CsvRow> rows;
  size_t pos = 0;
  size_t line = 1;
  while (pos < contents.size()) {
    if (contents[pos] == '#') {
      while (pos < contents.size() && contents[pos] != '\n') ++pos;
      ++pos;
      ++line;
      continue;
    }
    CsvRow row;
    row.line = line;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;
    bool done = false;
    while (!done) {
      if (pos >= contents.size()) {
        if (quoted) {
          throw Error(ErrorCode::kParse, source + ":" + std::to_string(row.line) +
                                             ": unterminated quoted field");
        }
        row.fields.push_back(std::move(field));
        break;
      }
      const char c = contents[pos++];
      if (quoted) {
        if (c == '"') {
          if (pos < contents.size() && contents[pos] == '"') {
            field.push_back('"');
            ++pos;
          } else {
            quoted = false;
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
            throw Error(ErrorCode::kParse, source + ":" + std::to_string(line) +
                                               ": stray quote in field");
          }
          quoted = true;
          field_was_quoted = true;
          break;
        case ',':
          row.fields.push_back(std::move(field));
          field.clear();
          field_was_quoted = false;
          break;
        case '\r':
          break;
        case '\n':
          ++line;
          row.fields.push_back(std::move(field));
          done = true;
          break;
        default:
          field.push_back(c);
      }
    }
    const bool blank = row.fields.size() == 1 && row.fields[0].empty();
    if (!blank) rows.push_back(std::move(row));
  }
  return rows;
}

// First non-comment record is the header.
inline CsvTable ParseCsv(std::string_view contents, const std::string& source) {
  CsvTable table;
  auto records = ParseCsvRecords(contents, source);
  if (records.empty()) return table;
  table.header = std::move(records.front().fields);
  records.erase(records.begin());
  table.rows = std::move(records);
  return table;
}

inline CsvTable ReadCsvFile(const std::string& path) {
  return ParseCsv(ReadFile(path), path);
}

inline std::string CsvEscape(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos &&
      !(field.size() > 0 && field.front() == '#')) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string CsvLine(const std::vector<std::string>& fields) {
  std::string out;
  for (size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += CsvEscape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

// Locale-independent numeric parsing; the whole field must be consumed.
inline bool ParseInt(std::string_view s, int64_t& value) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

inline bool ParseDouble(std::string_view s, double& value) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

inline bool ParseBool(std::string_view s, bool& value) {
  if (s == "true" || s == "1" || s == "yes" || s == "TRUE" || s == "True") {
    value = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "FALSE" || s == "False" ||
      s.empty()) {
    value = false;
    return true;
  }
  return false;
}

}  // namespace fairlens

#endif  // FAIRLENS_CSV_H_
