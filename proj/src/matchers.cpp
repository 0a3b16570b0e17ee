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

#include "gmatch/matchers.hpp"

#include <algorithm>
#include <cstdint>

#include "gmatch/errors.hpp"
#include "gmatch/kernels.hpp"
#include "gmatch/parallel.hpp"

namespace gmatch {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

void require_llm(const MatcherContext& ctx) {
  if (!ctx.llm) throw InvalidInput("this method needs an LLM backend");
}

void require_k(int k) {
  if (k < 1) throw InvalidInput("k must be >= 1");
}

void require_shortlist(int k, int k1) {
  require_k(k);
  if (k1 < k) throw InvalidInput("k1 must be >= k");
}

std::vector<ScoredId> knn_text(const MatcherContext& ctx, const std::string& text,
                               std::size_t k) {
  return knn(*ctx.description_index, ctx.embedder->embed(text), k);
}

std::vector<MatchCandidate> final_knn(const MatcherContext& ctx, const std::string& text,
                                      int k, Method method) {
  const auto hits = knn_text(ctx, text, static_cast<std::size_t>(k));
  return to_candidates(hits, ScoreKind::kCosine, method);
}

std::vector<GlossaryItem> shortlist(const ColumnQuery& query, const MatcherContext& ctx,
                                    int k1) {
  const auto hits = knn_text(ctx, canonical_query_text(query), static_cast<std::size_t>(k1));
  std::vector<GlossaryItem> items;
  items.reserve(hits.size());
  for (const ScoredId& h : hits) items.push_back(ctx.glossary->at(h.id));
  return items;
}

struct BinaryVerdict {
  std::string id;
  double yes = 0.0;
  bool positive = false;
};

// One Yes/No call per shortlisted item, fanned out up to the backend's
// in-flight limit. Verdicts come back in shortlist order.
std::vector<BinaryVerdict> classify(const ColumnQuery& query, const MatcherContext& ctx,
                                    std::span<const GlossaryItem> items, bool direct,
                                    std::string& preview) {
  std::vector<PromptBundle> prompts;
  prompts.reserve(items.size());
  for (const GlossaryItem& item : items) {
    prompts.push_back(render_binary_prompt(query, item, direct, ctx.templates));
  }
  if (!prompts.empty()) preview = prompts.front().prompt;
  std::vector<BinaryVerdict> verdicts(items.size());
  bounded_for_each(items.size(), ctx.llm->max_in_flight(), [&](std::size_t i) {
    const auto scores = ctx.llm->score_options(prompts[i].prompt, prompts[i].tokens());
    // Bindings are {Yes -> item, No -> none}.
    verdicts[i] = {items[i].id, scores[0].log_prob, scores[0].log_prob > scores[1].log_prob};
  });
  return verdicts;
}

struct McqaPick {
  std::optional<std::string> id;  // nullopt: none of the above
  double log_prob = 0.0;
};

McqaPick ask_mcqa(const ColumnQuery& query, const MatcherContext& ctx,
                  std::span<const GlossaryItem> choices, std::string& preview) {
  const PromptBundle bundle = render_mcqa_prompt(query, choices, true, ctx.templates);
  preview = bundle.prompt;
  const auto scores = ctx.llm->score_options(bundle.prompt, bundle.tokens());
  const std::size_t best = argmax_option(scores);
  return {bundle.options[best].glossary_id, scores[best].log_prob};
}

void require_mcqa_shortlist(int k, int k1) {
  require_shortlist(k, k1);
  if (k1 > kMaxMcqaShortlist) {
    throw InvalidInput("k1 must be <= " + std::to_string(kMaxMcqaShortlist) +
                       " for multiple-choice methods");
  }
}

}  // namespace

std::string indexed_text(const GlossaryItem& item, bool embed_label) {
  return embed_label ? item.label + ". " + item.description : item.description;
}

MatcherContext make_context(std::shared_ptr<const Glossary> glossary,
                            std::shared_ptr<const Embedder> embedder,
                            std::shared_ptr<LlmBackend> llm,
                            std::shared_ptr<const FeedbackBank> bank,
                            ContextOptions options) {
  if (!glossary || !embedder) throw InvalidInput("context needs a glossary and an embedder");
  MatcherContext ctx;
  ctx.glossary = std::move(glossary);
  ctx.embedder = std::move(embedder);
  ctx.llm = std::move(llm);
  ctx.templates = std::move(options.templates);
  ctx.generation = std::move(options.generation);
  ctx.demo_similarity = options.demo_similarity;
  ctx.embed_label = options.embed_label;

  std::vector<IndexItem> items;
  items.reserve(ctx.glossary->size());
  for (const GlossaryItem& item : ctx.glossary->items()) {
    items.push_back({item.id, indexed_text(item, ctx.embed_label)});
  }
  ctx.description_index = std::make_shared<const CosineIndex>(build_index(items, *ctx.embedder));
  return with_feedback(ctx, std::move(bank));
}

MatcherContext with_feedback(const MatcherContext& ctx,
                             std::shared_ptr<const FeedbackBank> bank) {
  MatcherContext out = ctx;
  out.bank = bank ? std::move(bank) : std::make_shared<const FeedbackBank>();
  out.demo_index = std::make_shared<const DemonstrationIndex>(*out.bank, *out.glossary,
                                                              *out.embedder, out.demo_similarity);
  return out;
}

MatchResult match_baseline(const ColumnQuery& query, const MatcherContext& ctx, int k) {
  require_k(k);
  return {final_knn(ctx, query.column_name, k, Method::kBaseline), {}};
}

MatchResult match_mdg_micl(const ColumnQuery& query, const MatcherContext& ctx, int k,
                           int shots) {
  require_k(k);
  require_llm(ctx);
  if (shots < 0) throw InvalidInput("shots must be >= 0");
  const auto demos =
      ctx.demo_index->select(query, static_cast<std::size_t>(shots), *ctx.embedder);
  const PromptBundle bundle = render_micl_prompt(query, demos, ctx.templates);
  const std::string generated = ctx.llm->generate(bundle.prompt, ctx.generation);
  const std::string description = compose_final_description(query, generated);
  return {final_knn(ctx, description, k, Method::kMdgMicl), bundle.prompt};
}

MatchResult match_mdg_cl(const ColumnQuery& query, const MatcherContext& ctx, int k, int k1) {
  require_shortlist(k, k1);
  require_llm(ctx);
  MatchResult result;
  const auto items = shortlist(query, ctx, k1);
  const auto verdicts = classify(query, ctx, items, false, result.prompt_preview);

  const BinaryVerdict* best = nullptr;
  for (const BinaryVerdict& v : verdicts) {
    if (!v.positive) continue;
    if (best == nullptr || v.yes > best->yes || (v.yes == best->yes && v.id < best->id)) {
      best = &v;
    }
  }
  const std::string description =
      best == nullptr ? canonical_query_text(query)
                      : compose_final_description(query, ctx.glossary->at(best->id).description);
  result.candidates = final_knn(ctx, description, k, Method::kMdgCl);
  return result;
}

MatchResult match_mdg_mcqa(const ColumnQuery& query, const MatcherContext& ctx, int k,
                           int k1) {
  require_mcqa_shortlist(k, k1);
  require_llm(ctx);
  MatchResult result;
  const auto items = shortlist(query, ctx, k1);
  std::string description = canonical_query_text(query);
  if (!items.empty()) {
    const McqaPick pick = ask_mcqa(query, ctx, items, result.prompt_preview);
    if (pick.id) {
      description = compose_final_description(query, ctx.glossary->at(*pick.id).description);
    }
  }
  result.candidates = final_knn(ctx, description, k, Method::kMdgMcqa);
  return result;
}

MatchResult match_di_cl(const ColumnQuery& query, const MatcherContext& ctx, int k, int k1) {
  require_shortlist(k, k1);
  require_llm(ctx);
  MatchResult result;
  const auto items = shortlist(query, ctx, k1);
  const auto verdicts = classify(query, ctx, items, true, result.prompt_preview);
  std::vector<ScoredId> positives;
  for (const BinaryVerdict& v : verdicts) {
    if (v.positive) positives.push_back({v.id, v.yes});
  }
  std::sort(positives.begin(), positives.end(), ranks_before);
  if (positives.size() > static_cast<std::size_t>(k)) positives.resize(static_cast<std::size_t>(k));
  result.candidates = to_candidates(positives, ScoreKind::kLogProb, Method::kDiCl);
  return result;
}

MatchResult match_di_mcqa(const ColumnQuery& query, const MatcherContext& ctx, int k, int k1) {
  require_mcqa_shortlist(k, k1);
  require_llm(ctx);
  MatchResult result;
  const auto items = shortlist(query, ctx, k1);
  if (items.empty()) return result;
  const McqaPick pick = ask_mcqa(query, ctx, items, result.prompt_preview);
  if (pick.id) {
    const ScoredId chosen{*pick.id, pick.log_prob};
    result.candidates =
        to_candidates(std::span<const ScoredId>(&chosen, 1), ScoreKind::kLogProb, Method::kDiMcqa);
  }
  return result;
}

MatchResult match_syntactic(const ColumnQuery& query, const MatcherContext& ctx, int k,
                            SyntacticMeasure measure) {
  require_k(k);
  const auto items = ctx.glossary->items();
  const std::string column = lower(query.column_name);
  std::vector<double> scores(items.size());
  std::vector<std::string> ids(items.size());
  const auto n = static_cast<std::int64_t>(items.size());
#pragma omp parallel for schedule(dynamic, 32) if (items.size() >= 512)
  for (std::int64_t i = 0; i < n; ++i) {
    const GlossaryItem& item = items[static_cast<std::size_t>(i)];
    scores[static_cast<std::size_t>(i)] =
        std::max(syntactic_similarity(column, lower(item.label), measure),
                 syntactic_similarity(column, lower(item.description), measure));
    ids[static_cast<std::size_t>(i)] = item.id;
  }
  const Method method = measure == SyntacticMeasure::kEdit ? Method::kEdit : Method::kJaroWinkler;
  const auto top = kernels::select_top_k(scores, ids, static_cast<std::size_t>(k));
  return {to_candidates(top, ScoreKind::kCosine, method), {}};
}

MatchResult run_matcher(const ColumnQuery& query, const MatcherContext& ctx,
                        const MatchConfig& config) {
  config.validate(ctx.bank ? ctx.bank->size() : 0);
  switch (config.method) {
    case Method::kBaseline:
      return match_baseline(query, ctx, config.k);
    case Method::kMdgMicl:
      return match_mdg_micl(query, ctx, config.k, config.shots);
    case Method::kMdgCl:
      return match_mdg_cl(query, ctx, config.k, config.k1);
    case Method::kMdgMcqa:
      return match_mdg_mcqa(query, ctx, config.k, config.k1);
    case Method::kDiCl:
      return match_di_cl(query, ctx, config.k, config.k1);
    case Method::kDiMcqa:
      return match_di_mcqa(query, ctx, config.k, config.k1);
    case Method::kEdit:
      return match_syntactic(query, ctx, config.k, SyntacticMeasure::kEdit);
    case Method::kJaroWinkler:
      return match_syntactic(query, ctx, config.k, SyntacticMeasure::kJaroWinkler);
  }
  throw InvalidInput("unknown method");
}

}  // namespace gmatch
