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

#include "gmatch/ingest.hpp"

#include <map>
#include <set>
#include <sstream>

#include "gmatch/csv.hpp"
#include "gmatch/errors.hpp"
#include "json.hpp"

namespace gmatch {

using ojson = nlohmann::ordered_json;

namespace {

void check_header(const CsvRecord& header, std::initializer_list<std::string_view> expected) {
  std::vector<std::string> got;
  for (const std::string& f : header.fields) got.push_back(trim(f));
  if (got.size() != expected.size() ||
      !std::equal(got.begin(), got.end(), expected.begin())) {
    std::string want;
    for (auto e : expected) want += (want.empty() ? "" : ",") + std::string(e);
    throw IngestError("expected header '" + want + "'", header.line);
  }
}

// Adds one item, reporting violations against `line`.
void add_item(std::vector<GlossaryItem>& items, std::set<std::string>& ids, GlossaryItem item,
              std::size_t line) {
  item.id = trim(item.id);
  item.label = trim(item.label);
  item.description = trim(item.description);
  if (item.id.empty()) throw IngestError("empty glossary id", line);
  if (item.label.empty()) throw IngestError("empty label for '" + item.id + "'", line);
  if (item.description.empty()) {
    throw IngestError("empty description for '" + item.id + "'", line);
  }
  if (item.label.find('|') != std::string::npos) {
    throw IngestError("label of '" + item.id + "' contains the reserved character '|'", line);
  }
  if (!ids.insert(item.id).second) {
    throw IngestError("duplicate glossary id '" + item.id + "'", line);
  }
  items.push_back(std::move(item));
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string line(text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                  : nl - pos));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return lines;
}

}  // namespace

Glossary parse_glossary_csv(std::string_view text) {
  const auto records = parse_csv(text);
  if (records.empty()) throw IngestError("glossary CSV has no header row");
  check_header(records.front(), {"id", "label", "description"});
  std::vector<GlossaryItem> items;
  std::set<std::string> ids;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.fields.size() != 3) {
      throw IngestError("expected 3 fields, got " + std::to_string(rec.fields.size()), rec.line);
    }
    add_item(items, ids, {rec.fields[0], rec.fields[1], rec.fields[2]}, rec.line);
  }
  return Glossary(std::move(items));
}

Glossary parse_glossary_jsonl(std::string_view text) {
  std::vector<GlossaryItem> items;
  std::set<std::string> ids;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) continue;
    GlossaryItem item;
    try {
      const ojson j = ojson::parse(lines[i]);
      item = {j.at("id").get<std::string>(), j.at("label").get<std::string>(),
              j.at("description").get<std::string>()};
    } catch (const nlohmann::json::exception& e) {
      throw IngestError(std::string("malformed glossary line: ") + e.what(), line_no);
    }
    add_item(items, ids, std::move(item), line_no);
  }
  return Glossary(std::move(items));
}

Glossary load_glossary(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const std::string ext = path.extension().string();
  if (ext == ".jsonl" || ext == ".json") return parse_glossary_jsonl(text);
  if (ext == ".csv") return parse_glossary_csv(text);
  const std::string head = trim(std::string_view(text).substr(0, 64));
  return !head.empty() && head.front() == '{' ? parse_glossary_jsonl(text)
                                              : parse_glossary_csv(text);
}

std::string format_glossary_csv(const Glossary& glossary) {
  std::string out = "id,label,description\n";
  for (const GlossaryItem& item : glossary.items()) {
    const std::string fields[] = {item.id, item.label, item.description};
    out += format_csv_row(fields);
  }
  return out;
}

std::string format_glossary_jsonl(const Glossary& glossary) {
  std::string out;
  for (const GlossaryItem& item : glossary.items()) {
    ojson j;
    j["id"] = item.id;
    j["label"] = item.label;
    j["description"] = item.description;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<TableSchema> parse_tables_json(std::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IngestError(std::string("malformed tables JSON: ") + e.what());
  }
  if (!j.is_array()) throw IngestError("tables JSON must be an array");
  std::vector<TableSchema> tables;
  std::set<std::string> names;
  for (std::size_t t = 0; t < j.size(); ++t) {
    const std::string where = "table #" + std::to_string(t + 1);
    TableSchema schema;
    try {
      schema.name = j[t].at("table").get<std::string>();
      schema.columns = j[t].at("columns").get<std::vector<std::string>>();
    } catch (const nlohmann::json::exception& e) {
      throw IngestError(where + ": " + e.what());
    }
    if (schema.columns.empty()) throw IngestError(where + " '" + schema.name + "' has no columns");
    if (!names.insert(schema.name).second) {
      throw IngestError("duplicate table '" + schema.name + "'");
    }
    std::set<std::string> seen;
    for (const std::string& c : schema.columns) {
      if (!seen.insert(c).second) {
        throw IngestError("duplicate column '" + c + "' in table '" + schema.name + "'");
      }
    }
    try {
      for (const std::string& c : schema.columns) {
        validate_query(make_query(schema.name, schema.columns, c));
      }
    } catch (const InvalidInput& e) {
      throw IngestError("table '" + schema.name + "': " + e.what());
    }
    tables.push_back(std::move(schema));
  }
  return tables;
}

std::vector<TableSchema> load_tables(const std::filesystem::path& path) {
  return parse_tables_json(read_text_file(path));
}

std::string format_tables_json(std::span<const TableSchema> tables) {
  ojson j = ojson::array();
  for (const TableSchema& t : tables) {
    ojson row;
    row["table"] = t.name;
    row["columns"] = t.columns;
    j.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::vector<ColumnQuery> column_queries(std::span<const TableSchema> tables) {
  std::vector<ColumnQuery> out;
  for (const TableSchema& t : tables) {
    for (const std::string& c : t.columns) out.push_back(make_query(t.name, t.columns, c));
  }
  return out;
}

const TableSchema* find_table(std::span<const TableSchema> tables, std::string_view name) {
  for (const TableSchema& t : tables) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::vector<LabeledExample> parse_gold_csv(std::string_view text, const Glossary& glossary,
                                           std::span<const TableSchema> tables) {
  const auto records = parse_csv(text);
  if (records.empty()) throw IngestError("gold mapping CSV has no header row");
  check_header(records.front(), {"table", "column", "glossary_id"});
  std::vector<LabeledExample> out;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const CsvRecord& rec = records[r];
    if (rec.fields.size() != 3) {
      throw IngestError("expected 3 fields, got " + std::to_string(rec.fields.size()), rec.line);
    }
    const std::string table = trim(rec.fields[0]);
    const std::string column = trim(rec.fields[1]);
    const std::string gold = trim(rec.fields[2]);
    const TableSchema* schema = find_table(tables, table);
    if (schema == nullptr) throw IngestError("unknown table '" + table + "'", rec.line);
    if (std::find(schema->columns.begin(), schema->columns.end(), column) ==
        schema->columns.end()) {
      throw IngestError("unknown column '" + table + "." + column + "'", rec.line);
    }
    LabeledExample example{make_query(table, schema->columns, column), std::nullopt};
    if (!gold.empty()) {
      if (!glossary.contains(gold)) {
        throw IngestError("unknown glossary id '" + gold + "'", rec.line);
      }
      example.gold_glossary_id = gold;
    }
    out.push_back(std::move(example));
  }
  return out;
}

std::vector<LabeledExample> load_gold_mappings(const std::filesystem::path& path,
                                               const Glossary& glossary,
                                               std::span<const TableSchema> tables) {
  return parse_gold_csv(read_text_file(path), glossary, tables);
}

std::string format_gold_csv(std::span<const LabeledExample> examples) {
  std::string out = "table,column,glossary_id\n";
  for (const LabeledExample& e : examples) {
    const std::string fields[] = {e.query.table_name, e.query.column_name,
                                  e.gold_glossary_id.value_or("")};
    out += format_csv_row(fields);
  }
  return out;
}

}  // namespace gmatch
