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

#include "gmatch/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "gmatch/errors.hpp"
#include "json.hpp"

namespace gmatch {

using ojson = nlohmann::ordered_json;

namespace {

constexpr int kEvalCutoff = 5;

std::string column_label(const ColumnQuery& q) {
  return q.table_name.empty() ? q.column_name : q.table_name + "." + q.column_name;
}

std::string backend_tag(const MatchConfig& config, const MatcherContext& ctx) {
  std::string tag = ctx.embedder->name();
  if (method_uses_llm(config.method) && ctx.llm) tag += "+" + ctx.llm->name();
  return tag;
}

}  // namespace

int hit_at_k(std::span<const MatchCandidate> candidates, std::string_view gold_id, int k) {
  if (k < 1) throw InvalidInput("k must be >= 1");
  const std::size_t limit = std::min(candidates.size(), static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < limit; ++i) {
    if (candidates[i].glossary_id == gold_id) return 1;
  }
  return 0;
}

DatasetSplit split_dataset(std::span<const LabeledExample> examples, SplitRatios ratios,
                           std::uint64_t seed) {
  if (!(ratios.train > 0.0 && ratios.test > 0.0 && ratios.demo > 0.0)) {
    throw InvalidInput("split ratios must be positive");
  }
  if (std::abs(ratios.train + ratios.test + ratios.demo - 1.0) > 1e-9) {
    throw InvalidInput("split ratios must sum to 1");
  }
  std::vector<LabeledExample> pool;
  for (const LabeledExample& e : examples) {
    if (e.gold_glossary_id) pool.push_back(e);
  }
  if (pool.empty()) throw InvalidInput("no labeled examples to split");

  // Fisher-Yates over mt19937_64 so the permutation does not depend on the
  // standard library's distribution implementation.
  std::mt19937_64 rng(seed);
  for (std::size_t i = pool.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(pool[i], pool[j]);
  }

  const std::size_t n = pool.size();
  std::size_t n_test = static_cast<std::size_t>(std::llround(ratios.test * static_cast<double>(n)));
  std::size_t n_demo = static_cast<std::size_t>(std::llround(ratios.demo * static_cast<double>(n)));
  n_test = std::min(n_test, n);
  n_demo = std::min(n_demo, n - n_test);
  const std::size_t n_train = n - n_test - n_demo;

  DatasetSplit split;
  auto it = pool.begin();
  split.train.assign(it, it + static_cast<std::ptrdiff_t>(n_train));
  it += static_cast<std::ptrdiff_t>(n_train);
  split.test.assign(it, it + static_cast<std::ptrdiff_t>(n_test));
  it += static_cast<std::ptrdiff_t>(n_test);
  split.demo.assign(it, pool.end());
  return split;
}

FeedbackBank bank_from_examples(std::span<const LabeledExample> examples,
                                std::int64_t confirmed_at) {
  FeedbackBank bank;
  for (const LabeledExample& e : examples) {
    if (e.gold_glossary_id) bank.add({e.query, *e.gold_glossary_id, confirmed_at});
  }
  return bank;
}

EvalReport evaluate(const MatchConfig& config, std::span<const LabeledExample> examples,
                    const MatcherContext& ctx, EvalOptions options) {
  std::vector<const LabeledExample*> labeled;
  for (const LabeledExample& e : examples) {
    if (!e.gold_glossary_id) continue;
    if (!ctx.glossary->contains(*e.gold_glossary_id)) {
      throw InvalidInput("gold id '" + *e.gold_glossary_id + "' is not in the glossary");
    }
    labeled.push_back(&e);
  }
  if (labeled.empty()) throw InvalidInput("nothing to evaluate: no labeled examples");

  MatchConfig run = config;
  run.k = kEvalCutoff;
  run.k1 = std::max(run.k1, run.k);
  run.validate(ctx.bank ? ctx.bank->size() : 0);

  EvalReport report;
  report.method = std::string(method_name(config.method));
  report.backend = backend_tag(config, ctx);
  report.n = labeled.size();
  report.per_example.resize(labeled.size());
  std::vector<int> hit1(labeled.size(), 0);
  std::vector<int> hit5(labeled.size(), 0);

  const auto n = static_cast<std::int64_t>(labeled.size());
  const int jobs = std::max(options.jobs, 1);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const LabeledExample& example = *labeled[idx];
    ExampleRecord& record = report.per_example[idx];
    record.column = column_label(example.query);
    record.gold = example.gold_glossary_id;
    try {
      const MatchResult result = run_matcher(example.query, ctx, run);
      for (const MatchCandidate& c : result.candidates) record.ranks.push_back(c.glossary_id);
      hit1[idx] = hit_at_k(result.candidates, *example.gold_glossary_id, 1);
      hit5[idx] = hit_at_k(result.candidates, *example.gold_glossary_id, kEvalCutoff);
    } catch (const std::exception& e) {
      record.error = e.what();
    }
  }

  long hits1 = 0;
  long hits5 = 0;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    hits1 += hit1[i];
    hits5 += hit5[i];
    if (report.per_example[i].error) ++report.failures;
  }
  report.hit_at_1 = static_cast<double>(hits1) / static_cast<double>(report.n);
  report.hit_at_5 = static_cast<double>(hits5) / static_cast<double>(report.n);
  return report;
}

std::string format_report_json(const EvalReport& report) {
  ojson j;
  j["method"] = report.method;
  j["backend"] = report.backend;
  j["n"] = report.n;
  j["hit_at_1"] = report.hit_at_1;
  j["hit_at_5"] = report.hit_at_5;
  j["failures"] = report.failures;
  ojson rows = ojson::array();
  for (const ExampleRecord& r : report.per_example) {
    ojson row;
    row["column"] = r.column;
    row["gold"] = r.gold ? ojson(*r.gold) : ojson(nullptr);
    row["ranks"] = r.ranks;
    if (r.error) row["error"] = *r.error;
    rows.push_back(std::move(row));
  }
  j["per_example"] = std::move(rows);
  return j.dump(2) + "\n";
}

EvalReport parse_report_json(std::string_view text) {
  try {
    const ojson j = ojson::parse(text);
    EvalReport report;
    report.method = j.at("method").get<std::string>();
    report.backend = j.at("backend").get<std::string>();
    report.n = j.at("n").get<std::size_t>();
    report.hit_at_1 = j.at("hit_at_1").get<double>();
    report.hit_at_5 = j.at("hit_at_5").get<double>();
    report.failures = j.at("failures").get<std::size_t>();
    for (const auto& row : j.at("per_example")) {
      ExampleRecord r;
      r.column = row.at("column").get<std::string>();
      if (!row.at("gold").is_null()) r.gold = row.at("gold").get<std::string>();
      r.ranks = row.at("ranks").get<std::vector<std::string>>();
      if (row.contains("error")) r.error = row.at("error").get<std::string>();
      report.per_example.push_back(std::move(r));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed report: ") + e.what());
  }
}

std::string format_report_table(std::span<const EvalReport> reports) {
  int backend_width = 7;
  for (const EvalReport& r : reports) {
    backend_width = std::max(backend_width, static_cast<int>(r.backend.size()));
  }
  std::string out;
  std::vector<char> line(static_cast<std::size_t>(backend_width) + 96);
  std::snprintf(line.data(), line.size(), "%-14s %-*s %8s %8s %6s\n", "Method", backend_width,
                "Backend", "Hit@1", "Hit@5", "n");
  out += line.data();
  for (const EvalReport& r : reports) {
    std::snprintf(line.data(), line.size(), "%-14s %-*s %8.4f %8.4f %6zu\n", r.method.c_str(),
                  backend_width, r.backend.c_str(), r.hit_at_1, r.hit_at_5, r.n);
    out += line.data();
  }
  return out;
}

}  // namespace gmatch
