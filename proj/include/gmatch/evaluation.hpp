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

#ifndef GMATCH_EVALUATION_HPP_
#define GMATCH_EVALUATION_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmatch/domain.hpp"
#include "gmatch/matchers.hpp"

namespace gmatch {

/// A column with its gold glossary item; no gold means a null mapping.
struct LabeledExample {
  ColumnQuery query;
  std::optional<std::string> gold_glossary_id;

  friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

/// 1 iff gold_id is among the first min(k, size) candidates. Short lists
/// simply have fewer chances.
int hit_at_k(std::span<const MatchCandidate> candidates, std::string_view gold_id, int k);

struct SplitRatios {
  double train = 0.0;
  double test = 0.0;
  double demo = 0.0;
};

struct DatasetSplit {
  std::vector<LabeledExample> train;
  std::vector<LabeledExample> test;
  std::vector<LabeledExample> demo;
};

/// Drops null mappings, shuffles the rest with `seed`, and cuts it into
/// round(ratio * N) test and demo examples; train takes the remainder.
/// Ratios must be positive and sum to 1 within 1e-9.
DatasetSplit split_dataset(std::span<const LabeledExample> examples, SplitRatios ratios,
                           std::uint64_t seed);

/// Feedback bank holding every example with a gold id, timestamped
/// `confirmed_at`.
FeedbackBank bank_from_examples(std::span<const LabeledExample> examples,
                                std::int64_t confirmed_at = 0);

struct ExampleRecord {
  std::string column;                  // "table.column"
  std::optional<std::string> gold;
  std::vector<std::string> ranks;      // returned glossary ids, best first
  std::optional<std::string> error;    // set when the matcher failed
};

struct EvalReport {
  std::string method;
  std::string backend;
  std::size_t n = 0;
  double hit_at_1 = 0.0;
  double hit_at_5 = 0.0;
  std::size_t failures = 0;
  std::vector<ExampleRecord> per_example;
};

struct EvalOptions {
  int jobs = 1;
};

/// Runs the matcher once per non-null example with k = 5 and derives Hit@1
/// from the first candidate. A failing example counts as a miss and is
/// recorded with its error.
EvalReport evaluate(const MatchConfig& config, std::span<const LabeledExample> examples,
                    const MatcherContext& ctx, EvalOptions options = {});

std::string format_report_json(const EvalReport& report);
EvalReport parse_report_json(std::string_view text);

/// Fixed-width table, one row per report: method, Hit@1, Hit@5.
std::string format_report_table(std::span<const EvalReport> reports);

}  // namespace gmatch

#endif  // GMATCH_EVALUATION_HPP_
