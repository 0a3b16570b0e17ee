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

#ifndef GMATCH_INGEST_HPP_
#define GMATCH_INGEST_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmatch/domain.hpp"
#include "gmatch/evaluation.hpp"

namespace gmatch {

// Glossary: CSV with header id,label,description, or JSONL of
// {"id","label","description"} objects. Values are trimmed.
Glossary parse_glossary_csv(std::string_view text);
Glossary parse_glossary_jsonl(std::string_view text);

/// Picks the format from the extension (.jsonl/.json), else sniffs for '{'.
Glossary load_glossary(const std::filesystem::path& path);

std::string format_glossary_csv(const Glossary& glossary);
std::string format_glossary_jsonl(const Glossary& glossary);

// Tables: JSON array of {"table": str, "columns": [str...]}.
std::vector<TableSchema> parse_tables_json(std::string_view text);
std::vector<TableSchema> load_tables(const std::filesystem::path& path);
std::string format_tables_json(std::span<const TableSchema> tables);

/// One query per column, tables in order.
std::vector<ColumnQuery> column_queries(std::span<const TableSchema> tables);

/// nullptr when the table or column does not exist.
const TableSchema* find_table(std::span<const TableSchema> tables, std::string_view name);

// Gold mappings: CSV with header table,column,glossary_id; an empty
// glossary_id marks a null mapping.
std::vector<LabeledExample> parse_gold_csv(std::string_view text, const Glossary& glossary,
                                           std::span<const TableSchema> tables);
std::vector<LabeledExample> load_gold_mappings(const std::filesystem::path& path,
                                               const Glossary& glossary,
                                               std::span<const TableSchema> tables);
std::string format_gold_csv(std::span<const LabeledExample> examples);

}  // namespace gmatch

#endif  // GMATCH_INGEST_HPP_
