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

#include "gmatch/cli.hpp"

#include <csignal>
#include <pthread.h>

#include <atomic>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "gmatch/config.hpp"
#include "gmatch/corpus.hpp"
#include "gmatch/csv.hpp"
#include "gmatch/embedding.hpp"
#include "gmatch/errors.hpp"
#include "gmatch/evaluation.hpp"
#include "gmatch/feedback_store.hpp"
#include "gmatch/ingest.hpp"
#include "gmatch/llm.hpp"
#include "gmatch/matchers.hpp"
#include "gmatch/prompting.hpp"
#include "gmatch/service.hpp"
#include "gmatch/workspace.hpp"

namespace gmatch {

namespace fs = std::filesystem;

namespace {

constexpr const char* kConfigEnv = "GLOSSARY_MATCHER_CONFIG";

// Config keys whose values are paths, resolved against the config file's
// directory when relative.
constexpr const char* kPathKeys[] = {"data.glossary", "data.tables",  "data.gold",
                                     "data.feedback", "data.reports", "llm.script",
                                     "prompts.templates"};

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> glossary;
  std::optional<std::string> tables;
  std::optional<std::string> gold;
  std::optional<std::string> feedback;
  std::optional<std::string> reports;
  std::optional<std::string> embedder;
  std::optional<std::string> embedder_url;
  std::optional<std::string> llm;
  std::optional<std::string> script;
  std::optional<std::string> llm_url;
  std::optional<std::string> templates;
  bool strict = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Settings file (falls back to $GLOSSARY_MATCHER_CONFIG)");
  cmd->add_option("--glossary", f.glossary, "Glossary CSV or JSONL");
  cmd->add_option("--tables", f.tables, "Tables JSON");
  cmd->add_option("--gold", f.gold, "Gold mappings CSV");
  cmd->add_option("--feedback", f.feedback, "Feedback JSONL store");
  cmd->add_option("--reports", f.reports, "Directory of evaluation reports");
  cmd->add_option("--embedder", f.embedder, "builtin | remote");
  cmd->add_option("--embedder-url", f.embedder_url, "Remote embedder base URL");
  cmd->add_option("--llm", f.llm, "scripted | remote");
  cmd->add_option("--script", f.script, "Scripted LLM rules (JSONL)");
  cmd->add_option("--llm-url", f.llm_url, "Remote LLM base URL");
  cmd->add_option("--templates", f.templates, "Prompt template directory");
  cmd->add_flag("--strict", f.strict, "Scripted LLM fails on unscripted prompts");
}

Settings resolve_settings(const CommonFlags& f) {
  Settings settings;
  std::optional<std::string> config = f.config;
  if (!config) {
    if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') config = env;
  }
  if (config) {
    settings = Settings::from_file(*config);
    const fs::path base = fs::path(*config).parent_path();
    for (const char* key : kPathKeys) {
      auto v = settings.get(key);
      if (v && !v->empty() && fs::path(*v).is_relative()) settings.set(key, (base / *v).string());
    }
  }
  auto overlay = [&](const char* key, const std::optional<std::string>& v) {
    if (v) settings.set(key, *v);
  };
  overlay("data.glossary", f.glossary);
  overlay("data.tables", f.tables);
  overlay("data.gold", f.gold);
  overlay("data.feedback", f.feedback);
  overlay("data.reports", f.reports);
  overlay("embedder.kind", f.embedder);
  overlay("embedder.url", f.embedder_url);
  overlay("llm.kind", f.llm);
  overlay("llm.script", f.script);
  overlay("llm.url", f.llm_url);
  overlay("prompts.templates", f.templates);
  if (f.strict) settings.set("llm.strict", "true");
  return settings;
}

FeedbackBank load_feedback(const Settings& settings) {
  const auto path = settings.get("data.feedback");
  if (!path || path->empty()) return {};
  return FeedbackStore(*path).load();
}

void print_candidates(std::ostream& out, const MatchResult& result, const Glossary& glossary) {
  out << std::left << std::setw(6) << "rank" << std::setw(14) << "glossary_id" << std::setw(12)
      << "score" << std::setw(10) << "kind" << "label\n";
  for (const MatchCandidate& c : result.candidates) {
    std::ostringstream score;
    score << std::fixed << std::setprecision(6) << c.score;
    out << std::left << std::setw(6) << c.rank << std::setw(14) << c.glossary_id << std::setw(12)
        << score.str() << std::setw(10) << score_kind_name(c.score_kind)
        << glossary.at(c.glossary_id).label << "\n";
  }
}

int cmd_ingest(const Settings& settings, const std::optional<std::string>& out_dir,
               std::ostream& out) {
  const Workspace ws = load_workspace(settings);
  std::size_t columns = 0;
  for (const TableSchema& t : ws.tables) columns += t.columns.size();
  std::size_t mapped = 0;
  for (const LabeledExample& e : ws.gold) mapped += e.gold_glossary_id ? 1 : 0;
  out << "glossary items: " << ws.glossary->size() << "\n"
      << "tables: " << ws.tables.size() << "\n"
      << "columns: " << columns << "\n";
  if (settings.has("data.gold")) {
    out << "gold rows: " << ws.gold.size() << " (" << mapped << " mapped, "
        << ws.gold.size() - mapped << " null)\n";
  }
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_text_file(fs::path(*out_dir) / "glossary.csv", format_glossary_csv(*ws.glossary));
    write_text_file(fs::path(*out_dir) / "tables.json", format_tables_json(ws.tables));
    if (settings.has("data.gold")) {
      write_text_file(fs::path(*out_dir) / "gold.csv", format_gold_csv(ws.gold));
    }
    out << "normalized copies written to " << *out_dir << "\n";
  }
  return kExitOk;
}

struct MatchFlags {
  std::string table;
  std::string column;
  std::string method = "baseline";
  int k = 5;
  std::optional<int> k1;
  int shots = 0;
  bool show_prompt = false;
};

Method require_method(const std::string& name) {
  const auto m = parse_method(name);
  if (!m) throw CLI::ValidationError("--method", "unknown method '" + name + "'");
  return *m;
}

int cmd_match(const Settings& settings, const MatchFlags& flags, std::ostream& out) {
  MatchConfig config;
  config.method = require_method(flags.method);
  config.k = flags.k;
  config.k1 = flags.k1.value_or(std::max(10, flags.k));
  config.shots = flags.shots;

  const Workspace ws = load_workspace(settings);
  const TableSchema* table = find_table(ws.tables, flags.table);
  if (table == nullptr ||
      std::find(table->columns.begin(), table->columns.end(), flags.column) ==
          table->columns.end()) {
    throw InvalidInput("unknown column '" + flags.table + "." + flags.column + "'");
  }
  const auto bank = std::make_shared<const FeedbackBank>(load_feedback(settings));
  const MatcherContext ctx =
      make_context(ws.glossary, make_embedder(settings),
                   method_uses_llm(config.method) ? make_llm(settings) : nullptr, bank,
                   context_options(settings));
  const MatchResult result =
      run_matcher(make_query(table->name, table->columns, flags.column), ctx, config);
  print_candidates(out, result, *ws.glossary);
  if (flags.show_prompt && !result.prompt_preview.empty()) {
    out << "\n--- prompt ---\n" << result.prompt_preview << "\n";
  }
  return kExitOk;
}

struct EvalFlags {
  std::vector<std::string> methods;
  std::string split = "test";
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> ratios;
  std::optional<int> jobs;
  std::optional<int> k1;
  int shots = 0;
};

int cmd_eval(const Settings& settings, const EvalFlags& flags, std::ostream& out,
             std::ostream& err) {
  std::vector<Method> methods;
  for (const std::string& name : flags.methods) {
    if (name == "all") {
      methods.assign(all_methods().begin(), all_methods().end());
    } else {
      methods.push_back(require_method(name));
    }
  }
  const Workspace ws = load_workspace(settings, true);
  const std::uint64_t seed =
      flags.seed.value_or(static_cast<std::uint64_t>(settings.get_int("eval.seed", 0)));
  const SplitRatios ratios =
      parse_ratios(flags.ratios.value_or(settings.get_or("eval.ratios", kDefaultRatios)));
  const DatasetSplit split = split_dataset(ws.gold, ratios, seed);

  const std::vector<LabeledExample>* examples = nullptr;
  if (flags.split == "train") {
    examples = &split.train;
  } else if (flags.split == "test") {
    examples = &split.test;
  } else if (flags.split == "demo") {
    examples = &split.demo;
  } else if (flags.split == "all") {
    examples = &ws.gold;
  } else {
    throw CLI::ValidationError("--split", "must be train, test, demo or all");
  }

  // The demonstration split stands in for human feedback unless a stored
  // bank is configured.
  const auto bank = std::make_shared<const FeedbackBank>(
      settings.has("data.feedback") ? load_feedback(settings) : bank_from_examples(split.demo));

  bool needs_llm = false;
  for (Method m : methods) needs_llm = needs_llm || method_uses_llm(m);
  const MatcherContext ctx = make_context(ws.glossary, make_embedder(settings),
                                          needs_llm ? make_llm(settings) : nullptr, bank,
                                          context_options(settings));
  EvalOptions options;
  options.jobs = flags.jobs.value_or(static_cast<int>(settings.get_int("eval.jobs", 1)));

  std::vector<EvalReport> reports;
  for (Method m : methods) {
    MatchConfig config;
    config.method = m;
    config.k1 = flags.k1.value_or(10);
    config.shots = flags.shots;
    config.seed = seed;
    reports.push_back(evaluate(config, *examples, ctx, options));
  }

  if (flags.out) {
    if (reports.size() == 1) {
      const fs::path path(*flags.out);
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      write_text_file(path, format_report_json(reports.front()));
    } else {
      fs::create_directories(*flags.out);
      for (const EvalReport& r : reports) {
        write_text_file(fs::path(*flags.out) / (r.method + ".json"), format_report_json(r));
      }
    }
  }
  out << format_report_table(reports);

  std::size_t failures = 0;
  for (const EvalReport& r : reports) failures += r.failures;
  if (failures > 0) {
    err << "warning: " << failures << " example(s) failed and were counted as misses\n";
    return kExitBackend;
  }
  return kExitOk;
}

struct GenFlags {
  std::uint64_t seed = 0;
  std::size_t glossary_size = 500;
  std::size_t tables = 20;
  std::size_t columns = 10;
  double null_fraction = 0.1;
  double cryptic_fraction = 0.0;
  std::string out = "corpus";
};

// Exact-prompt answers for the multiple-choice methods under the default
// configuration (builtin embedder, default templates, k1 = 10): the gold
// letter when the shortlist holds the gold item, the None letter otherwise.
std::vector<ScriptRule> mcqa_oracle_rules(const Corpus& corpus) {
  constexpr std::size_t kDefaultShortlist = 10;
  const HashingEmbedder embedder;
  std::vector<IndexItem> items;
  for (const GlossaryItem& item : corpus.glossary.items()) {
    items.push_back({item.id, item.description});
  }
  const CosineIndex index = build_index(items, embedder);
  std::vector<ScriptRule> rules;
  for (const LabeledExample& e : corpus.examples) {
    if (!e.gold_glossary_id) continue;
    std::vector<GlossaryItem> choices;
    for (const ScoredId& hit :
         knn(index, embedder.embed(canonical_query_text(e.query)), kDefaultShortlist)) {
      choices.push_back(corpus.glossary.at(hit.id));
    }
    const PromptBundle bundle = render_mcqa_prompt(e.query, choices, true);
    std::string answer = bundle.options.back().token;
    for (const OptionBinding& option : bundle.options) {
      if (option.glossary_id == e.gold_glossary_id) answer = option.token;
    }
    rules.push_back({ScriptRule::MatchKind::kKey, prompt_key(bundle.prompt), std::nullopt,
                     std::vector<OptionScore>{{answer, -0.05}}});
  }
  return rules;
}

int cmd_gen_corpus(const GenFlags& flags, std::ostream& out) {
  CorpusOptions options;
  options.seed = flags.seed;
  options.glossary_size = flags.glossary_size;
  options.tables = flags.tables;
  options.columns_per_table = flags.columns;
  options.null_fraction = flags.null_fraction;
  options.cryptic_fraction = flags.cryptic_fraction;
  const Corpus corpus = generate_synthetic_corpus(options);

  const fs::path dir(flags.out);
  fs::create_directories(dir);
  write_text_file(dir / "glossary.csv", format_glossary_csv(corpus.glossary));
  write_text_file(dir / "tables.json", format_tables_json(corpus.tables));
  write_text_file(dir / "gold.csv", format_gold_csv(corpus.examples));
  std::string script;
  for (const ScriptRule& rule : mcqa_oracle_rules(corpus)) script += format_script_rule(rule) + "\n";
  for (const ScriptRule& rule : oracle_script(corpus.glossary, corpus.examples)) {
    script += format_script_rule(rule) + "\n";
  }
  write_text_file(dir / "oracle_script.jsonl", script);
  write_text_file(dir / "gmatch.ini",
                  "[data]\n"
                  "glossary = glossary.csv\n"
                  "tables = tables.json\n"
                  "gold = gold.csv\n"
                  "reports = reports\n"
                  "\n"
                  "[embedder]\n"
                  "kind = builtin\n"
                  "\n"
                  "[llm]\n"
                  "kind = scripted\n"
                  "script = oracle_script.jsonl\n"
                  "\n"
                  "[eval]\n"
                  "seed = " + std::to_string(flags.seed) + "\n"
                  "ratios = 208:212:68\n");

  std::size_t mapped = 0;
  for (const LabeledExample& e : corpus.examples) mapped += e.gold_glossary_id ? 1 : 0;
  out << "wrote " << corpus.glossary.size() << " glossary items, " << corpus.tables.size()
      << " tables, " << corpus.examples.size() << " columns (" << mapped << " mapped) to "
      << dir.string() << "\n";
  return kExitOk;
}

int cmd_split(const Settings& settings, const std::optional<std::string>& ratios_flag,
              std::optional<std::uint64_t> seed_flag, const std::optional<std::string>& out_dir,
              std::ostream& out) {
  const Workspace ws = load_workspace(settings, true);
  const SplitRatios ratios =
      parse_ratios(ratios_flag.value_or(settings.get_or("eval.ratios", kDefaultRatios)));
  const std::uint64_t seed =
      seed_flag.value_or(static_cast<std::uint64_t>(settings.get_int("eval.seed", 0)));
  const DatasetSplit split = split_dataset(ws.gold, ratios, seed);
  out << "train " << split.train.size() << "\ntest " << split.test.size() << "\ndemo "
      << split.demo.size() << "\n";
  if (out_dir) {
    fs::create_directories(*out_dir);
    write_text_file(fs::path(*out_dir) / "train.csv", format_gold_csv(split.train));
    write_text_file(fs::path(*out_dir) / "test.csv", format_gold_csv(split.test));
    write_text_file(fs::path(*out_dir) / "demo.csv", format_gold_csv(split.demo));
  }
  return kExitOk;
}

int cmd_serve(const Settings& settings, std::optional<int> port_flag,
              std::optional<std::string> host_flag, std::ostream& out) {
  const Workspace ws = load_workspace(settings);
  std::shared_ptr<FeedbackStore> store;
  FeedbackBank bank;
  if (auto path = settings.get("data.feedback"); path && !path->empty()) {
    store = std::make_shared<FeedbackStore>(*path);
    bank = store->load();
  }
  const MatcherContext ctx =
      make_context(ws.glossary, make_embedder(settings), make_llm(settings),
                   std::make_shared<const FeedbackBank>(std::move(bank)),
                   context_options(settings));
  ServiceOptions options;
  options.host = host_flag.value_or(settings.get_or("serve.host", "127.0.0.1"));
  options.port = port_flag.value_or(static_cast<int>(settings.get_int("serve.port", 8080)));
  options.reports_dir = settings.get_or("data.reports", "");
  MatchService service(ctx, ws.tables, store, options);
  const int port = service.bind();

  // SIGINT/SIGTERM are taken off the serving threads and handled here.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  sigset_t previous;
  pthread_sigmask(SIG_BLOCK, &signals, &previous);
  std::atomic<bool> done{false};
  std::thread watcher([&] {
    const timespec tick{0, 200'000'000};
    while (!done.load()) {
      if (sigtimedwait(&signals, nullptr, &tick) > 0) {
        service.stop();
        return;
      }
    }
  });

  out << "serving on http://" << options.host << ":" << port << "\n" << std::flush;
  int rc = kExitOk;
  try {
    service.listen();
  } catch (...) {
    done = true;
    watcher.join();
    pthread_sigmask(SIG_SETMASK, &previous, nullptr);
    throw;
  }
  done = true;
  watcher.join();
  pthread_sigmask(SIG_SETMASK, &previous, nullptr);
  return rc;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Match table column metadata to business glossary items", "gmatch"};
  app.require_subcommand(1);

  CommonFlags common;

  std::optional<std::string> ingest_out;
  CLI::App* ingest = app.add_subcommand("ingest", "Validate glossary, tables and gold mappings");
  add_common(ingest, common);
  ingest->add_option("--out", ingest_out, "Write normalized copies into this directory");

  MatchFlags match_flags;
  CLI::App* match = app.add_subcommand("match", "Rank glossary items for one column");
  add_common(match, common);
  match->add_option("--table", match_flags.table, "Table name")->required();
  match->add_option("--column", match_flags.column, "Column name")->required();
  match->add_option("--method", match_flags.method, "Matching method");
  match->add_option("--k", match_flags.k, "Number of candidates");
  match->add_option("--k1", match_flags.k1, "Shortlist size for LLM methods");
  match->add_option("--shots", match_flags.shots, "Demonstrations for mdg_micl");
  match->add_flag("--show-prompt", match_flags.show_prompt, "Print the first LLM prompt");

  EvalFlags eval_flags;
  CLI::App* eval = app.add_subcommand("eval", "Hit@1/Hit@5 of one or more methods on a split");
  add_common(eval, common);
  eval->add_option("--method", eval_flags.methods, "Method name, repeatable, or 'all'")
      ->required();
  eval->add_option("--split", eval_flags.split, "train | test | demo | all");
  eval->add_option("--out", eval_flags.out, "Report JSON (a directory for several methods)");
  eval->add_option("--seed", eval_flags.seed, "Split seed");
  eval->add_option("--ratios", eval_flags.ratios, "train:test:demo weights");
  eval->add_option("--jobs", eval_flags.jobs, "Parallel examples");
  eval->add_option("--k1", eval_flags.k1, "Shortlist size for LLM methods");
  eval->add_option("--shots", eval_flags.shots, "Demonstrations for mdg_micl");

  GenFlags gen_flags;
  CLI::App* gen = app.add_subcommand("gen-corpus", "Write a seeded synthetic corpus");
  gen->add_option("--seed", gen_flags.seed, "Generator seed");
  gen->add_option("--glossary-size", gen_flags.glossary_size, "Glossary items");
  gen->add_option("--tables", gen_flags.tables, "Number of tables");
  gen->add_option("--columns", gen_flags.columns, "Columns per table");
  gen->add_option("--null-fraction", gen_flags.null_fraction, "Share of unmapped columns")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--cryptic-fraction", gen_flags.cryptic_fraction,
                  "Share of mapped columns given opaque names")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--out", gen_flags.out, "Output directory");

  std::optional<std::string> split_ratios;
  std::optional<std::uint64_t> split_seed;
  std::optional<std::string> split_out;
  CLI::App* split = app.add_subcommand("split", "Split gold mappings into train/test/demo");
  add_common(split, common);
  split->add_option("--ratios", split_ratios, "train:test:demo weights");
  split->add_option("--seed", split_seed, "Shuffle seed");
  split->add_option("--out", split_out, "Write train.csv, test.csv, demo.csv here");

  std::optional<int> serve_port;
  std::optional<std::string> serve_host;
  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP match service");
  add_common(serve, common);
  serve->add_option("--port", serve_port, "Listen port");
  serve->add_option("--host", serve_host, "Listen address");

  std::vector<const char*> argv;
  argv.push_back("gmatch");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen_corpus(gen_flags, out);
    const Settings settings = resolve_settings(common);
    if (*ingest) return cmd_ingest(settings, ingest_out, out);
    if (*match) return cmd_match(settings, match_flags, out);
    if (*eval) return cmd_eval(settings, eval_flags, out, err);
    if (*split) return cmd_split(settings, split_ratios, split_seed, split_out, out);
    if (*serve) return cmd_serve(settings, serve_port, serve_host, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const BackendUnavailable& e) {
    err << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const UnscriptedPrompt& e) {
    err << "backend error: " << e.what() << "\n";
    return kExitBackend;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace gmatch
