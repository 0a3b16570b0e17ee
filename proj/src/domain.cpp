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

#include "gmatch/domain.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "gmatch/errors.hpp"

namespace gmatch {

namespace {

constexpr char kDelimiter = '|';

bool has_delimiter(std::string_view s) {
  return s.find(kDelimiter) != std::string_view::npos;
}

constexpr std::array<Method, 8> kMethods = {
    Method::kBaseline, Method::kMdgMicl, Method::kMdgCl,
    Method::kMdgMcqa,  Method::kDiCl,    Method::kDiMcqa,
    Method::kEdit,     Method::kJaroWinkler,
};

}  // namespace

std::string trim(std::string_view s) {
  const auto is_space = [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  std::size_t begin = 0;
  std::size_t end = s.size();
  while (begin < end && is_space(s[begin])) ++begin;
  while (end > begin && is_space(s[end - 1])) --end;
  return std::string(s.substr(begin, end - begin));
}

Glossary::Glossary(std::vector<GlossaryItem> items) : items_(std::move(items)) {
  by_id_.reserve(items_.size());
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const GlossaryItem& item = items_[i];
    if (trim(item.id).empty()) {
      throw InvalidInput("glossary item #" + std::to_string(i + 1) +
                         " has an empty id");
    }
    if (trim(item.label).empty() || trim(item.description).empty()) {
      throw InvalidInput("glossary item '" + item.id +
                         "' has an empty label or description");
    }
    if (has_delimiter(item.label)) {
      throw InvalidInput("glossary label of '" + item.id +
                         "' contains the reserved character '|'");
    }
    if (!by_id_.emplace(item.id, i).second) {
      throw InvalidInput("duplicate glossary id '" + item.id + "'");
    }
  }
}

const GlossaryItem* Glossary::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &items_[it->second];
}

const GlossaryItem& Glossary::at(std::string_view id) const {
  const GlossaryItem* item = find(id);
  if (item == nullptr) {
    throw InvalidInput("unknown glossary id '" + std::string(id) + "'");
  }
  return *item;
}

void validate_query(const ColumnQuery& query) {
  if (trim(query.column_name).empty()) {
    throw InvalidInput("column name is empty");
  }
  if (has_delimiter(query.table_name) || has_delimiter(query.column_name)) {
    throw InvalidInput("table or column name contains the reserved character '|'");
  }
  for (const std::string& sibling : query.sibling_columns) {
    if (has_delimiter(sibling)) {
      throw InvalidInput("sibling column '" + sibling +
                         "' contains the reserved character '|'");
    }
    if (sibling == query.column_name) {
      throw InvalidInput("column '" + sibling + "' listed as its own sibling");
    }
  }
}

std::string canonical_query_text(const ColumnQuery& query) {
  std::string out;
  if (!query.table_name.empty()) {
    out += query.table_name;
    out += " | ";
  }
  out += query.column_name;
  if (!query.sibling_columns.empty()) {
    out += " | ";
    for (std::size_t i = 0; i < query.sibling_columns.size(); ++i) {
      if (i > 0) out += ", ";
      out += query.sibling_columns[i];
    }
  }
  return out;
}

ColumnQuery make_query(std::string table, std::span<const std::string> columns,
                       std::string_view column) {
  ColumnQuery query;
  query.table_name = std::move(table);
  query.column_name = std::string(column);
  if (std::find(columns.begin(), columns.end(), column) == columns.end()) {
    throw InvalidInput("column '" + query.column_name + "' is not in table '" + query.table_name + "'");
  }
  for (const std::string& c : columns) {
    if (c != column) query.sibling_columns.push_back(c);
  }
  return query;
}

bool FeedbackBank::add(FeedbackEntry entry) {
  if (contains(entry.query, entry.glossary_id)) return false;
  entries_.push_back(std::move(entry));
  return true;
}

bool FeedbackBank::contains(const ColumnQuery& query,
                            std::string_view glossary_id) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const auto& e) {
    return e.glossary_id == glossary_id && e.query == query;
  });
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kBaseline: return "baseline";
    case Method::kMdgMicl: return "mdg_micl";
    case Method::kMdgCl: return "mdg_cl";
    case Method::kMdgMcqa: return "mdg_mcqa";
    case Method::kDiCl: return "di_cl";
    case Method::kDiMcqa: return "di_mcqa";
    case Method::kEdit: return "edit";
    case Method::kJaroWinkler: return "jaro_winkler";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : kMethods) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::span<const Method> all_methods() { return kMethods; }

bool method_uses_llm(Method method) {
  switch (method) {
    case Method::kMdgMicl:
    case Method::kMdgCl:
    case Method::kMdgMcqa:
    case Method::kDiCl:
    case Method::kDiMcqa:
      return true;
    default:
      return false;
  }
}

std::string_view score_kind_name(ScoreKind kind) {
  return kind == ScoreKind::kCosine ? "cosine" : "log_prob";
}

void MatchConfig::validate(std::size_t bank_size) const {
  if (k < 1) throw InvalidInput("k must be >= 1");
  if (k1 < k) throw InvalidInput("k1 must be >= k");
  if (shots < 0) throw InvalidInput("shots must be >= 0");
  if (static_cast<std::size_t>(shots) > bank_size) {
    throw InvalidInput("shots (" + std::to_string(shots) +
                       ") exceeds feedback bank size (" +
                       std::to_string(bank_size) + ")");
  }
}

std::vector<MatchCandidate> to_candidates(std::span<const ScoredId> ordered,
                                          ScoreKind kind, Method method) {
  std::vector<MatchCandidate> out;
  out.reserve(ordered.size());
  int rank = 1;
  for (const ScoredId& s : ordered) {
    out.push_back({s.id, rank++, s.score, kind, method});
  }
  return out;
}

bool is_valid_ranking(std::span<const MatchCandidate> candidates) {
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const MatchCandidate& c = candidates[i];
    if (c.rank != static_cast<int>(i) + 1) return false;
    if (!seen.insert(c.glossary_id).second) return false;
    if (i == 0) continue;
    const MatchCandidate& prev = candidates[i - 1];
    if (c.score_kind != prev.score_kind) return false;
    if (c.score > prev.score) return false;
    if (c.score == prev.score && !(prev.glossary_id < c.glossary_id)) {
      return false;
    }
  }
  return true;
}

}  // namespace gmatch
