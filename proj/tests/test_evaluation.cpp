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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "gmatch/corpus.hpp"
#include "gmatch/errors.hpp"
#include "gmatch/evaluation.hpp"

using namespace gmatch;

namespace {

std::vector<MatchCandidate> ranked(std::initializer_list<const char*> ids) {
  std::vector<ScoredId> hits;
  double score = 1.0;
  for (const char* id : ids) hits.push_back({id, score -= 0.1});
  return to_candidates(hits, ScoreKind::kCosine, Method::kBaseline);
}

std::vector<LabeledExample> numbered_examples(std::size_t n) {
  std::vector<LabeledExample> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({{"T", "C" + std::to_string(i), {}}, "g" + std::to_string(i % 7)});
  }
  return out;
}

std::set<std::string> columns_of(const std::vector<LabeledExample>& xs) {
  std::set<std::string> out;
  for (const auto& x : xs) out.insert(x.query.column_name);
  return out;
}

}  // namespace

TEST_CASE("hit@k") {
  CHECK(hit_at_k(ranked({"a", "b", "gold", "c", "d"}), "gold", 5) == 1);
  CHECK(hit_at_k(ranked({"a", "b", "gold", "c", "d"}), "gold", 2) == 0);
  CHECK(hit_at_k({}, "gold", 5) == 0);
  CHECK(hit_at_k(ranked({"gold"}), "gold", 5) == 1);
  CHECK(hit_at_k(ranked({"a", "b", "c", "d", "e", "gold"}), "gold", 5) == 0);
  CHECK_THROWS_AS(hit_at_k({}, "gold", 0), InvalidInput);
}

TEST_CASE("split sizes follow the ratios") {
  const auto examples = numbered_examples(488);
  const SplitRatios ratios{208.0 / 488, 212.0 / 488, 68.0 / 488};
  const DatasetSplit s = split_dataset(examples, ratios, 1);
  CHECK(s.train.size() == 208);
  CHECK(s.test.size() == 212);
  CHECK(s.demo.size() == 68);
}

TEST_CASE("splits partition the labeled examples") {
  auto examples = numbered_examples(100);
  examples.push_back({{"T", "UNLABELED", {}}, std::nullopt});
  for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) {
    const DatasetSplit s = split_dataset(examples, {0.5, 0.3, 0.2}, seed);
    const auto a = columns_of(s.train), b = columns_of(s.test), c = columns_of(s.demo);
    CHECK(a.size() + b.size() + c.size() == 100);
    std::set<std::string> all = a;
    all.insert(b.begin(), b.end());
    all.insert(c.begin(), c.end());
    CHECK(all.size() == 100);
    CHECK_FALSE(all.contains("UNLABELED"));
  }
}

TEST_CASE("splits are reproducible per seed") {
  const auto examples = numbered_examples(200);
  const SplitRatios r{0.4, 0.4, 0.2};
  const auto a = split_dataset(examples, r, 7);
  const auto b = split_dataset(examples, r, 7);
  const auto c = split_dataset(examples, r, 8);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  CHECK(a.demo == b.demo);
  CHECK(a.test != c.test);
}

TEST_CASE("split argument checks") {
  const auto examples = numbered_examples(10);
  CHECK_THROWS_AS(split_dataset(examples, {0.5, 0.5, 0.0}, 1), InvalidInput);
  CHECK_THROWS_AS(split_dataset(examples, {0.5, 0.5, 0.5}, 1), InvalidInput);
  CHECK_THROWS_AS(split_dataset(std::vector<LabeledExample>{}, {0.4, 0.4, 0.2}, 1), InvalidInput);
}

TEST_CASE("evaluation of a perfect and an empty matcher") {
  const auto glossary = testutil::separable_glossary();
  std::vector<LabeledExample> examples;
  for (const auto& item : glossary->items()) {
    if (examples.size() == 10) break;
    examples.push_back({{"T", item.description, {}}, item.id});
  }
  MatchConfig baseline;
  const auto ctx = testutil::context(glossary);
  const EvalReport perfect = evaluate(baseline, examples, ctx);
  CHECK(perfect.n == 10);
  CHECK(perfect.hit_at_1 == 1.0);
  CHECK(perfect.hit_at_5 == 1.0);

  MatchConfig di_cl;
  di_cl.method = Method::kDiCl;
  const auto negative = testutil::context(
      glossary, testutil::scripted({testutil::scores_containing("Answer", {{"No", -0.01}})}));
  const EvalReport empty = evaluate(di_cl, examples, negative);
  CHECK(empty.hit_at_1 == 0.0);
  CHECK(empty.hit_at_5 == 0.0);
  CHECK(empty.failures == 0);
}

TEST_CASE("failing examples count as misses and are reported") {
  const auto glossary = testutil::separable_glossary();
  std::vector<LabeledExample> examples = {{{"T", "A", {}}, "g01"}, {{"T", "B", {}}, "g02"}};
  MatchConfig micl;
  micl.method = Method::kMdgMicl;
  const auto ctx = testutil::context(glossary, testutil::scripted({}, true));
  const EvalReport r = evaluate(micl, examples, ctx, {2});
  CHECK(r.failures == 2);
  CHECK(r.hit_at_5 == 0.0);
  REQUIRE(r.per_example[0].error.has_value());
  CHECK(r.per_example[0].error->find("no completion scripted") != std::string::npos);
}

TEST_CASE("evaluation skips null golds and rejects unknown ones") {
  const auto glossary = testutil::separable_glossary();
  const auto ctx = testutil::context(glossary);
  std::vector<LabeledExample> examples = {{{"T", "A", {}}, "g01"}, {{"T", "B", {}}, std::nullopt}};
  CHECK(evaluate(MatchConfig{}, examples, ctx).n == 1);
  examples.push_back({{"T", "C", {}}, "missing"});
  CHECK_THROWS_AS(evaluate(MatchConfig{}, examples, ctx), InvalidInput);
}

TEST_CASE("reports serialize and parse back") {
  EvalReport r;
  r.method = "baseline";
  r.backend = "builtin";
  r.n = 2;
  r.hit_at_1 = 0.5;
  r.hit_at_5 = 1.0;
  r.failures = 1;
  r.per_example = {{"T.A", "g1", {"g1", "g2"}, std::nullopt}, {"T.B", "g2", {}, "boom"}};
  const std::string text = format_report_json(r);
  const EvalReport back = parse_report_json(text);
  CHECK(format_report_json(back) == text);
  CHECK(text.find("\"method\"") < text.find("\"backend\""));
  CHECK(format_report_table(std::vector<EvalReport>{r}).find("0.5000") != std::string::npos);
}

TEST_CASE("synthetic corpus is seeded and self-consistent") {
  CorpusOptions opts;
  opts.seed = 21;
  const Corpus a = generate_synthetic_corpus(opts);
  const Corpus b = generate_synthetic_corpus(opts);
  CHECK(a.glossary == b.glossary);
  CHECK(a.tables == b.tables);
  CHECK(a.examples == b.examples);
  CHECK(a.glossary.size() == 500);
  CHECK(a.tables.size() == 20);
  CHECK(a.examples.size() == 200);
  std::size_t nulls = 0;
  for (const auto& e : a.examples) {
    if (e.gold_glossary_id) {
      CHECK(a.glossary.contains(*e.gold_glossary_id));
    } else {
      ++nulls;
    }
    CHECK_NOTHROW(validate_query(e.query));
  }
  CHECK(nulls > 0);
  opts.seed = 22;
  CHECK_FALSE(generate_synthetic_corpus(opts).examples == a.examples);
}

TEST_CASE("cryptic column names share no 3-grams with the gold description") {
  CorpusOptions opts;
  opts.seed = 4;
  opts.cryptic_fraction = 1.0;
  const Corpus c = generate_synthetic_corpus(opts);
  for (const auto& e : c.examples) {
    if (!e.gold_glossary_id) continue;
    const auto desc = hashing_grams(c.glossary.at(*e.gold_glossary_id).description);
    const std::set<std::string> taken(desc.begin(), desc.end());
    for (const auto& g : hashing_grams(e.query.column_name)) CHECK_FALSE(taken.contains(g));
  }
}

TEST_CASE("baseline beats random guessing on a 100-item corpus") {
  CorpusOptions opts;
  opts.seed = 5;
  opts.glossary_size = 100;
  const Corpus c = generate_synthetic_corpus(opts);
  const auto ctx = testutil::context(std::make_shared<const Glossary>(c.glossary));
  const EvalReport r = evaluate(MatchConfig{}, c.examples, ctx);
  CHECK(r.hit_at_5 > 5.0 / 100.0);
}

TEST_CASE("DI-MCQA never separates hit@1 from hit@5") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    CorpusOptions opts;
    opts.seed = seed;
    opts.glossary_size = 120;
    opts.tables = 5;
    const Corpus c = generate_synthetic_corpus(opts);
    const auto ctx = testutil::context(
        std::make_shared<const Glossary>(c.glossary),
        testutil::scripted({testutil::scores_containing("Options:", {{"B", -0.1}, {"A", -0.4}})}));
    MatchConfig config;
    config.method = Method::kDiMcqa;
    const EvalReport r = evaluate(config, c.examples, ctx);
    CHECK(r.hit_at_1 == r.hit_at_5);
  }
}
