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

#ifndef GMATCH_CSV_HPP_
#define GMATCH_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmatch {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line where the record starts
};

/// RFC 4180: quoted fields may hold commas, doubled quotes and line breaks;
/// CRLF and LF are both accepted. Blank lines are skipped. Throws IngestError
/// on an unterminated quote or stray characters after a closing quote.
std::vector<CsvRecord> parse_csv(std::string_view text);

std::string format_csv_row(std::span<const std::string> fields);

/// Whole file as bytes with a leading UTF-8 BOM removed.
std::string read_text_file(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace gmatch

#endif  // GMATCH_CSV_HPP_
