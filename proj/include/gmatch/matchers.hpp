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

#ifndef GMATCH_MATCHERS_HPP_
#define GMATCH_MATCHERS_HPP_

#include <memory>
#include <string>
#include <vector>

#include "gmatch/domain.hpp"
#include "gmatch/embedding.hpp"
#include "gmatch/llm.hpp"
#include "gmatch/prompting.hpp"
#include "gmatch/syntactic.hpp"

namespace gmatch {

/// Everything a matcher reads. Cheap to copy; all heavy members are shared
/// and immutable, except the LLM whose calls are independent.
struct MatcherContext {
  std::shared_ptr<const Glossary> glossary;
  std::shared_ptr<const Embedder> embedder;
  std::shared_ptr<LlmBackend> llm;  // may be null for non-LLM methods
  std::shared_ptr<const CosineIndex> description_index;
  std::shared_ptr<const FeedbackBank> bank;
  std::shared_ptr<const DemonstrationIndex> demo_index;
  PromptTemplates templates = PromptTemplates::defaults();
  GenerationParams generation{64, 0.0, {"\n"}};
  DemoSimilarity demo_similarity = DemoSimilarity::kDescription;
  bool embed_label = false;
};

struct ContextOptions {
  bool embed_label = false;  // index "label. description" instead of description
  DemoSimilarity demo_similarity = DemoSimilarity::kDescription;
  PromptTemplates templates = PromptTemplates::defaults();
  GenerationParams generation{64, 0.0, {"\n"}};
};

/// Builds the description index and the demonstration index. `bank` may be
/// null (treated as empty).
MatcherContext make_context(std::shared_ptr<const Glossary> glossary,
                            std::shared_ptr<const Embedder> embedder,
                            std::shared_ptr<LlmBackend> llm,
                            std::shared_ptr<const FeedbackBank> bank,
                            ContextOptions options = {});

/// Same context with a different feedback bank; only the demonstration index
/// is rebuilt.
MatcherContext with_feedback(const MatcherContext& ctx,
                             std::shared_ptr<const FeedbackBank> bank);

/// Text embedded for a glossary item in the description index.
std::string indexed_text(const GlossaryItem& item, bool embed_label);

struct MatchResult {
  std::vector<MatchCandidate> candidates;
  std::string prompt_preview;  // first prompt sent to the LLM, if any
};

/// kNN of the column name alone over glossary descriptions.
MatchResult match_baseline(const ColumnQuery& query, const MatcherContext& ctx, int k);

/// Generate a description with `shots` demonstrations, then kNN on it.
MatchResult match_mdg_micl(const ColumnQuery& query, const MatcherContext& ctx, int k,
                           int shots);

/// Yes/No over the k1 shortlist; the best positive item's description (or the
/// metadata alone) drives the final kNN.
MatchResult match_mdg_cl(const ColumnQuery& query, const MatcherContext& ctx, int k, int k1);

/// Multiple choice over the k1 shortlist plus "none"; the chosen description
/// (or the metadata alone) drives the final kNN. k1 <= 24.
MatchResult match_mdg_mcqa(const ColumnQuery& query, const MatcherContext& ctx, int k, int k1);

/// Positives of a direct Yes/No pass, best Yes log-prob first, at most k.
MatchResult match_di_cl(const ColumnQuery& query, const MatcherContext& ctx, int k, int k1);

/// The single multiple-choice pick, or nothing on "none".
MatchResult match_di_mcqa(const ColumnQuery& query, const MatcherContext& ctx, int k, int k1);

/// Ranks items by max(sim(column, label), sim(column, description)) with both
/// sides lowercased.
MatchResult match_syntactic(const ColumnQuery& query, const MatcherContext& ctx, int k,
                            SyntacticMeasure measure);

inline constexpr int kMaxMcqaShortlist = 24;

/// Validates `config` against the context and dispatches on config.method.
MatchResult run_matcher(const ColumnQuery& query, const MatcherContext& ctx,
                        const MatchConfig& config);

}  // namespace gmatch

#endif  // GMATCH_MATCHERS_HPP_
