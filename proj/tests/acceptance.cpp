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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances are fixed below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "gmatch/cli.hpp"
#include "gmatch/corpus.hpp"
#include "gmatch/csv.hpp"
#include "gmatch/errors.hpp"
#include "gmatch/evaluation.hpp"
#include "gmatch/feedback_store.hpp"
#include "gmatch/ingest.hpp"
#include "gmatch/prompting.hpp"
#include "gmatch/remote.hpp"
#include "gmatch/syntactic.hpp"
#include "reference_measures.hpp"

using namespace gmatch;

namespace {

constexpr double kKnnBudgetSeconds = 5.0;
constexpr double kSyntacticTolerance = 1e-6;
constexpr int kSyntacticPairs = 1000;
constexpr int kRoundTripCases = 100;
constexpr int kUpliftSeeds = 5;
constexpr double kCrypticFraction = 0.5;

struct Verdict {
  bool pass = false;
  std::string detail;
};

int g_failures = 0;

void report(const std::string& name, const std::function<Verdict()>& check) {
  Verdict v;
  try {
    v = check();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  std::printf("%s  %-28s %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str());
  std::fflush(stdout);
  if (!v.pass) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

EmbeddingVector random_unit(std::mt19937_64& rng, std::size_t dims) {
  std::normal_distribution<double> dist;
  std::vector<double> v(dims);
  for (double& x : v) x = dist(rng);
  return EmbeddingVector::normalized(std::move(v));
}

// ---------------------------------------------------------------- kNN

Verdict knn_oracle() {
  constexpr std::size_t kItems = 1000, kDims = 256, kQueries = 100, kK = 5;
  std::mt19937_64 rng(20240601);
  std::vector<std::string> ids;
  std::vector<EmbeddingVector> vecs;
  for (std::size_t i = 0; i < kItems; ++i) {
    ids.push_back(fmt("item%04zu", i));
    vecs.push_back(random_unit(rng, kDims));
  }
  std::vector<EmbeddingVector> queries;
  for (std::size_t q = 0; q < kQueries; ++q) queries.push_back(random_unit(rng, kDims));

  const auto start = std::chrono::steady_clock::now();
  const CosineIndex index = CosineIndex::from_vectors(ids, vecs);
  std::vector<std::vector<ScoredId>> got;
  for (const auto& q : queries) got.push_back(knn(index, q, kK));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Oracle: full scan over the original vectors, full sort, id tie-break.
  std::size_t mismatches = 0;
  for (std::size_t q = 0; q < kQueries; ++q) {
    std::vector<std::pair<double, std::string>> all;
    for (std::size_t i = 0; i < kItems; ++i) {
      double dot = 0.0;
      for (std::size_t d = 0; d < kDims; ++d) dot += vecs[i][d] * queries[q][d];
      all.emplace_back(dot, ids[i]);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    std::vector<std::string> want;
    for (std::size_t r = 0; r < kK; ++r) want.push_back(all[r].second);
    if (testutil::ids_of(got[q]) != want) ++mismatches;
  }
  return {mismatches == 0 && seconds < kKnnBudgetSeconds,
          fmt("%zu/%zu queries differ from exhaustive scan; %.3fs (limit %.1fs)", mismatches,
              kQueries, seconds, kKnnBudgetSeconds)};
}

// ---------------------------------------------------------------- Hit@k

// Four examples whose gold lands at rank 1, rank 2, rank 6 and nowhere,
// produced through DI-Cl with a scripted Yes-score table.
Verdict hit_at_k_scenario() {
  const auto glossary = testutil::separable_glossary();
  auto yes = [&](const std::string& column, const std::string& id, double lp) {
    return testutil::scores_containing("Column metadata: T | " + column + "\nGlossary description: " +
                                           glossary->at(id).description + "\n",
                                       {{"Yes", lp}, {"No", -5.0}});
  };
  std::vector<ScriptRule> rules = {
      yes("RANK1", "g01", -0.1), yes("RANK1", "g02", -0.2),
      yes("RANK2", "g02", -0.1), yes("RANK2", "g01", -0.2),
      yes("RANK6", "g02", -0.1), yes("RANK6", "g03", -0.2), yes("RANK6", "g04", -0.3),
      yes("RANK6", "g05", -0.4), yes("RANK6", "g06", -0.5), yes("RANK6", "g01", -0.6),
      yes("ABSENT", "g02", -0.1),
      testutil::scores_containing("Answer Yes or No.", {{"Yes", -5.0}, {"No", -0.01}}),
  };
  const auto ctx = testutil::context(glossary, testutil::scripted(rules));
  std::vector<LabeledExample> examples;
  for (const char* col : {"RANK1", "RANK2", "RANK6", "ABSENT"}) {
    examples.push_back({{"T", col, {}}, "g01"});
  }
  MatchConfig config;
  config.method = Method::kDiCl;
  config.k1 = 12;
  const EvalReport r = evaluate(config, examples, ctx);
  return {r.hit_at_1 == 0.25 && r.hit_at_5 == 0.5 && r.failures == 0,
          fmt("hit_at_1=%.4f (want 0.25) hit_at_5=%.4f (want 0.5)", r.hit_at_1, r.hit_at_5)};
}

// ---------------------------------------------------------------- split

Verdict split_fidelity() {
  CorpusOptions opts;
  opts.seed = 488;
  opts.tables = 61;
  opts.columns_per_table = 8;
  opts.null_fraction = 0.0;
  const Corpus corpus = generate_synthetic_corpus(opts);
  std::size_t labeled = 0;
  for (const auto& e : corpus.examples) labeled += e.gold_glossary_id.has_value();
  const SplitRatios ratios{208.0 / 488.0, 212.0 / 488.0, 68.0 / 488.0};
  const DatasetSplit a = split_dataset(corpus.examples, ratios, 7);
  const DatasetSplit b = split_dataset(corpus.examples, ratios, 7);
  const bool sizes = a.train.size() == 208 && a.test.size() == 212 && a.demo.size() == 68;
  const bool same = a.train == b.train && a.test == b.test && a.demo == b.demo;
  return {labeled == 488 && sizes && same,
          fmt("n=%zu sizes=%zu/%zu/%zu (want 208/212/68), same-seed identical=%s", labeled,
              a.train.size(), a.test.size(), a.demo.size(), same ? "yes" : "no")};
}

// ---------------------------------------------------------------- determinism

int cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  return run_cli(args, out, err);
}

Verdict pipeline_determinism() {
  testutil::TempDir dir;
  const std::string corpus = (dir / "corpus").string();
  if (cli({"gen-corpus", "--seed", "2024", "--out", corpus}) != kExitOk) return {false, "gen-corpus failed"};
  const std::string config = corpus + "/gmatch.ini";
  const int first = cli({"eval", "--config", config, "--method", "all", "--jobs", "1", "--out", (dir / "run1").string()});
  const int second = cli({"eval", "--config", config, "--method", "all", "--jobs", "4", "--out", (dir / "run2").string()});
  if (first != kExitOk || second != kExitOk) return {false, fmt("eval exit codes %d, %d", first, second)};
  std::size_t files = 0, differing = 0;
  for (Method m : all_methods()) {
    const std::string name = std::string(method_name(m)) + ".json";
    ++files;
    if (read_text_file(dir / "run1" / name) != read_text_file(dir / "run2" / name)) ++differing;
  }
  return {differing == 0 && files == all_methods().size(),
          fmt("%zu reports compared across two runs (1 and 4 jobs), %zu differ", files, differing)};
}

// ---------------------------------------------------------------- method contracts

std::string mcqa_letter(std::size_t index) { return std::string(1, static_cast<char>('A' + index)); }

Verdict method_contracts() {
  CorpusOptions opts;
  opts.seed = 99;
  const Corpus corpus = generate_synthetic_corpus(opts);
  if (corpus.glossary.size() != 500 || corpus.examples.size() != 200) {
    return {false, "corpus shape is not 500 items / 200 columns"};
  }
  const auto glossary = std::make_shared<const Glossary>(corpus.glossary);
  const DatasetSplit split = split_dataset(corpus.examples, {208.0 / 488, 212.0 / 488, 68.0 / 488}, 1);
  const FeedbackBank bank = bank_from_examples(split.demo);
  const int k1 = 10;
  std::vector<std::string> notes;
  bool ok = true;

  // (a) DI-MCQA single-candidate property under several answer scripts.
  {
    std::mt19937_64 rng(5);
    std::vector<ScriptRule> random_letters;
    for (const auto& e : corpus.examples) {
      random_letters.push_back(testutil::scores_containing(
          "Column metadata: " + canonical_query_text(e.query) + "\nOptions:",
          {{mcqa_letter(rng() % (k1 + 1)), -0.1}}));
    }
    const std::vector<std::vector<ScriptRule>> scripts = {
        {testutil::scores_containing("Options:", {{"A", -0.1}})},
        {testutil::scores_containing("Options:", {{mcqa_letter(k1), -0.1}})},
        random_letters,
    };
    int equal = 0;
    for (const auto& script : scripts) {
      MatchConfig c;
      c.method = Method::kDiMcqa;
      c.k1 = k1;
      const EvalReport r = evaluate(c, corpus.examples, testutil::context(glossary, testutil::scripted(script)));
      equal += r.hit_at_1 == r.hit_at_5 && r.failures == 0;
    }
    ok = ok && equal == static_cast<int>(scripts.size());
    notes.push_back(fmt("(a) hit1==hit5 in %d/%zu runs", equal, scripts.size()));
  }

  // (b) DI-Cl with an all-negative script.
  {
    const auto ctx = testutil::context(
        glossary, testutil::scripted({testutil::scores_containing("Answer Yes or No.", {{"Yes", -4.0}, {"No", -0.02}})}));
    std::size_t nonempty = 0;
    for (const auto& e : corpus.examples) nonempty += !match_di_cl(e.query, ctx, 5, k1).candidates.empty();
    MatchConfig c;
    c.method = Method::kDiCl;
    const EvalReport r = evaluate(c, corpus.examples, ctx);
    const bool pass = nonempty == 0 && r.hit_at_1 == 0.0 && r.hit_at_5 == 0.0;
    ok = ok && pass;
    notes.push_back(fmt("(b) %zu non-empty lists, hit=%.2f/%.2f", nonempty, r.hit_at_1, r.hit_at_5));
  }

  // (c) MDG-Cl / MDG-MCQA fall back to knn of the metadata.
  {
    const auto ctx = testutil::context(
        glossary, testutil::scripted({testutil::scores_containing("Answer Yes or No.", {{"Yes", -4.0}, {"No", -0.02}}),
                                      testutil::scores_containing("Options:", {{mcqa_letter(k1), -0.1}})}));
    std::size_t differ = 0;
    for (const auto& e : corpus.examples) {
      const auto expected = to_candidates(
          knn(*ctx.description_index, ctx.embedder->embed(canonical_query_text(e.query)), 5),
          ScoreKind::kCosine, Method::kMdgCl);
      auto cl = match_mdg_cl(e.query, ctx, 5, k1).candidates;
      auto mcqa = match_mdg_mcqa(e.query, ctx, 5, k1).candidates;
      for (auto& c : mcqa) c.method = Method::kMdgCl;
      differ += cl != expected;
      differ += mcqa != expected;
    }
    ok = ok && differ == 0;
    notes.push_back(fmt("(c) %zu of %zu rankings differ from knn(metadata)", differ, 2 * corpus.examples.size()));
  }

  // (d) MDG-MICL demonstration count.
  {
    const auto ctx = testutil::context(glossary, testutil::scripted({}, false), bank);
    std::size_t wrong = 0, checked = 0;
    for (int shots = 0; shots <= 2; ++shots) {
      for (const auto& e : split.test) {
        const std::string prompt = match_mdg_micl(e.query, ctx, 5, shots).prompt_preview;
        std::size_t blocks = 0;
        for (auto p = prompt.find("\nDescription: "); p != std::string::npos; p = prompt.find("\nDescription: ", p + 1)) {
          ++blocks;
        }
        wrong += blocks != static_cast<std::size_t>(shots);
        ++checked;
      }
    }
    ok = ok && wrong == 0;
    notes.push_back(fmt("(d) %zu/%zu prompts with wrong block count", wrong, checked));
  }

  std::string detail;
  for (const auto& n : notes) detail += (detail.empty() ? "" : "; ") + n;
  return {ok, detail};
}

// ---------------------------------------------------------------- oracle uplift

struct UpliftRun {
  double baseline = 0.0;
  double micl = 0.0;
};

UpliftRun uplift_run(std::uint64_t seed, double cryptic) {
  CorpusOptions opts;
  opts.seed = seed;
  opts.cryptic_fraction = cryptic;
  const Corpus corpus = generate_synthetic_corpus(opts);
  const auto glossary = std::make_shared<const Glossary>(corpus.glossary);
  const DatasetSplit split = split_dataset(corpus.examples, {208.0 / 488, 212.0 / 488, 68.0 / 488}, seed);
  MatcherContext ctx = testutil::context(glossary, nullptr, bank_from_examples(split.demo));

  // A perfect generator: the exact two-shot prompt of every test column is
  // answered with that column's gold description.
  constexpr int kShots = 2;
  std::vector<ScriptRule> rules;
  for (const auto& e : split.test) {
    const auto demos = ctx.demo_index->select(e.query, kShots, *ctx.embedder);
    rules.push_back(testutil::completion_for(render_micl_prompt(e.query, demos).prompt,
                                             glossary->at(*e.gold_glossary_id).description));
  }
  ctx.llm = testutil::scripted(rules, true);

  MatchConfig baseline;
  MatchConfig micl;
  micl.method = Method::kMdgMicl;
  micl.shots = kShots;
  const EvalReport rb = evaluate(baseline, split.test, ctx);
  const EvalReport rm = evaluate(micl, split.test, ctx);
  if (rm.failures != 0) throw Error("oracle script missed a prompt");
  return {rb.hit_at_1, rm.hit_at_1};
}

Verdict oracle_uplift() {
  bool never_worse = true;
  int strict_cryptic = 0;
  std::string detail;
  for (int s = 0; s < kUpliftSeeds; ++s) {
    const UpliftRun plain = uplift_run(static_cast<std::uint64_t>(100 + s), 0.0);
    const UpliftRun cryptic = uplift_run(static_cast<std::uint64_t>(100 + s), kCrypticFraction);
    never_worse = never_worse && plain.micl >= plain.baseline && cryptic.micl >= cryptic.baseline;
    strict_cryptic += cryptic.micl > cryptic.baseline;
    detail += fmt("%s[%.3f/%.3f, cryptic %.3f/%.3f]", s ? " " : "", plain.micl, plain.baseline,
                  cryptic.micl, cryptic.baseline);
  }
  return {never_worse && strict_cryptic >= 1,
          fmt("micl/baseline hit@1 per seed: ", 0) + detail +
              fmt("; strict on %d/%d cryptic seeds", strict_cryptic, kUpliftSeeds)};
}

// ---------------------------------------------------------------- syntactic

Verdict syntactic_reference() {
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int i = 0; i < kSyntacticPairs; ++i) {
    const std::string a = testref::random_word(rng);
    const std::string b = testref::random_word(rng);
    worst = std::max(worst, std::abs(jaro_winkler(a, b) - testref::jaro_winkler(a, b)));
    worst = std::max(worst, std::abs(edit_similarity(a, b) - testref::edit_similarity(a, b)));
  }
  const double martha = jaro_winkler("MARTHA", "MARHTA");
  const double martha_ref = testref::jaro_winkler("MARTHA", "MARHTA");
  const bool ok = worst <= kSyntacticTolerance && std::abs(martha - martha_ref) <= kSyntacticTolerance &&
                  std::abs(martha - 0.9611111111111111) <= kSyntacticTolerance;
  return {ok, fmt("max |diff| over %d pairs = %.2e (tol %.0e); MARTHA/MARHTA = %.10f", kSyntacticPairs, worst,
                  kSyntacticTolerance, martha)};
}

// ---------------------------------------------------------------- round trip

std::string random_text(std::mt19937_64& rng, bool rich) {
  static const std::vector<std::string> plain = {"a", "b", "Z", "0", "_", " ", "x"};
  static const std::vector<std::string> extra = {",", "\"", "\n", "'", "\xc3\xa9", "\xe2\x80\x94", ";", "{", "\\"};
  std::string s = "k";
  for (std::size_t n = rng() % 14; n > 0; --n) {
    s += rich && rng() % 3 == 0 ? extra[rng() % extra.size()] : plain[rng() % plain.size()];
  }
  return s + "q";
}

bool round_trip_case(std::mt19937_64& rng, const testutil::TempDir& dir, int i) {
  std::vector<GlossaryItem> items;
  for (std::size_t n = 1 + rng() % 8; n > 0; --n) {
    items.push_back({"id" + std::to_string(items.size()) + random_text(rng, false), random_text(rng, true),
                     random_text(rng, true)});
  }
  const Glossary glossary(items);
  if (parse_glossary_csv(format_glossary_csv(glossary)) != glossary) return false;
  if (parse_glossary_jsonl(format_glossary_jsonl(glossary)) != glossary) return false;

  std::vector<TableSchema> tables;
  for (std::size_t t = 1 + rng() % 3; t > 0; --t) {
    TableSchema schema{"T" + std::to_string(tables.size()) + random_text(rng, false), {}};
    for (std::size_t c = 1 + rng() % 4; c > 0; --c) {
      schema.columns.push_back("C" + std::to_string(schema.columns.size()) + random_text(rng, true));
    }
    tables.push_back(std::move(schema));
  }
  if (parse_tables_json(format_tables_json(tables)) != tables) return false;

  std::vector<LabeledExample> gold;
  for (const auto& q : column_queries(tables)) {
    std::optional<std::string> id;
    if (rng() % 4 != 0) id = items[rng() % items.size()].id;
    gold.push_back({q, id});
  }
  if (parse_gold_csv(format_gold_csv(gold), glossary, tables) != gold) return false;

  FeedbackStore store(dir / ("feedback" + std::to_string(i) + ".jsonl"));
  FeedbackBank expected;
  for (const auto& e : gold) {
    const FeedbackEntry entry{e.query, items[rng() % items.size()].id,
                              static_cast<std::int64_t>(rng() % 4000000000ULL)};
    store.append(entry, glossary);
    expected.add(entry);
  }
  const FeedbackBank loaded = store.load();
  return std::equal(loaded.entries().begin(), loaded.entries().end(), expected.entries().begin(),
                    expected.entries().end());
}

Verdict round_trip() {
  testutil::TempDir dir;
  std::mt19937_64 rng(31337);
  int failed = 0;
  for (int i = 0; i < kRoundTripCases; ++i) failed += !round_trip_case(rng, dir, i);
  return {failed == 0, fmt("%d/%d randomized cases failed (glossary csv+jsonl, tables, mappings, feedback)",
                           failed, kRoundTripCases)};
}

// ---------------------------------------------------------------- live

void live_sanity() {
  const char* embed_url = std::getenv("GMATCH_LIVE_EMBEDDER_URL");
  if (embed_url == nullptr || *embed_url == '\0') {
    std::printf("SKIP  %-28s set GMATCH_LIVE_EMBEDDER_URL to run\n", "live-sanity");
    return;
  }
  report("live-sanity", [&] {
    CorpusOptions opts;
    opts.seed = 1;
    const Corpus corpus = generate_synthetic_corpus(opts);
    const auto ctx = make_context(std::make_shared<const Glossary>(corpus.glossary),
                                  std::make_shared<const RemoteEmbedder>(embed_url), nullptr, nullptr);
    const EvalReport r = evaluate(MatchConfig{}, corpus.examples, ctx, {4});
    const double chance = 5.0 / static_cast<double>(corpus.glossary.size());
    return Verdict{r.hit_at_5 > chance, fmt("baseline hit@5 %.4f vs chance %.4f", r.hit_at_5, chance)};
  });
}

}  // namespace

int main() {
  report("knn-oracle-equivalence", knn_oracle);
  report("hit-at-k-scenario", hit_at_k_scenario);
  report("split-fidelity", split_fidelity);
  report("pipeline-determinism", pipeline_determinism);
  report("method-contracts", method_contracts);
  report("oracle-uplift", oracle_uplift);
  report("syntactic-reference", syntactic_reference);
  report("round-trip", round_trip);
  live_sanity();
  std::printf("%d criterion/criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
