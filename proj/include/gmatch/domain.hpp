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

#ifndef GMATCH_DOMAIN_HPP_
#define GMATCH_DOMAIN_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gmatch {

/// One business concept: an opaque id plus a human label and description.
struct GlossaryItem {
  std::string id;
  std::string label;
  std::string description;

  friend bool operator==(const GlossaryItem&, const GlossaryItem&) = default;
};

/// Flat list of glossary items with unique ids. Immutable once built.
class Glossary {
 public:
  Glossary() = default;

  /// Validates every item (trimmed non-empty label and description, no `|`
  /// in labels, unique ids). Throws InvalidInput on the first violation.
  explicit Glossary(std::vector<GlossaryItem> items);

  std::span<const GlossaryItem> items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  const GlossaryItem* find(std::string_view id) const;
  const GlossaryItem& at(std::string_view id) const;
  bool contains(std::string_view id) const { return find(id) != nullptr; }

  friend bool operator==(const Glossary& a, const Glossary& b) {
    return a.items_ == b.items_;
  }

 private:
  std::vector<GlossaryItem> items_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// The metadata available for one column: its table, its own name and the
/// names of the other columns of the same table, in table order.
struct ColumnQuery {
  std::string table_name;
  std::string column_name;
  std::vector<std::string> sibling_columns;

  friend bool operator==(const ColumnQuery&, const ColumnQuery&) = default;
};

/// Throws InvalidInput if the query cannot be serialized unambiguously.
void validate_query(const ColumnQuery& query);

/// `table | column | sib1, sib2`; empty table and empty sibling segments are
/// left out entirely.
std::string canonical_query_text(const ColumnQuery& query);

/// Builds the query for `column` of a table whose columns are `columns`.
/// Siblings keep table order with the target removed.
ColumnQuery make_query(std::string table, std::span<const std::string> columns,
                       std::string_view column);

/// One table's name and its column names in table order.
struct TableSchema {
  std::string name;
  std::vector<std::string> columns;

  friend bool operator==(const TableSchema&, const TableSchema&) = default;
};

struct FeedbackEntry {
  ColumnQuery query;
  std::string glossary_id;
  std::int64_t confirmed_at = 0;  // UTC seconds

  friend bool operator==(const FeedbackEntry&, const FeedbackEntry&) = default;
};

/// Human-confirmed (metadata, glossary item) pairs. Duplicate
/// (query, glossary_id) pairs collapse onto the first occurrence.
class FeedbackBank {
 public:
  /// Returns false and leaves the bank untouched when the pair is present.
  bool add(FeedbackEntry entry);
  bool contains(const ColumnQuery& query, std::string_view glossary_id) const;

  std::span<const FeedbackEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<FeedbackEntry> entries_;
};

enum class Method {
  kBaseline,
  kMdgMicl,
  kMdgCl,
  kMdgMcqa,
  kDiCl,
  kDiMcqa,
  kEdit,
  kJaroWinkler,
};

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);
std::span<const Method> all_methods();
bool method_uses_llm(Method method);

enum class ScoreKind { kCosine, kLogProb };

std::string_view score_kind_name(ScoreKind kind);

struct MatchConfig {
  Method method = Method::kBaseline;
  int k = 5;
  int k1 = 10;
  int shots = 0;
  std::uint64_t seed = 0;

  /// Checks k >= 1, k1 >= k, 0 <= shots <= bank_size.
  void validate(std::size_t bank_size) const;
};

struct MatchCandidate {
  std::string glossary_id;
  int rank = 0;  // 1-based
  double score = 0.0;
  ScoreKind score_kind = ScoreKind::kCosine;
  Method method = Method::kBaseline;

  friend bool operator==(const MatchCandidate&, const MatchCandidate&) = default;
};

struct ScoredId {
  std::string id;
  double score = 0.0;

  friend bool operator==(const ScoredId&, const ScoredId&) = default;
};

/// Ranking order used everywhere: score descending, then id ascending.
inline bool ranks_before(const ScoredId& a, const ScoredId& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.id < b.id;
}

/// Assigns ranks 1..n to an already ordered list.
std::vector<MatchCandidate> to_candidates(std::span<const ScoredId> ordered,
                                          ScoreKind kind, Method method);

/// Gap-free 1-based ranks, one score kind, non-increasing scores, ascending id
/// among equal scores, no repeated ids.
bool is_valid_ranking(std::span<const MatchCandidate> candidates);

std::string trim(std::string_view s);

}  // namespace gmatch

#endif  // GMATCH_DOMAIN_HPP_
