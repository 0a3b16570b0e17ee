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

#ifndef GMATCH_WORKSPACE_HPP_
#define GMATCH_WORKSPACE_HPP_

// Turns Settings into loaded data and configured backends. Keys:
//   data.glossary data.tables data.gold data.feedback data.reports
//   embedder.kind (builtin|remote) embedder.url embedder.embed_label
//   llm.kind (scripted|remote) llm.script llm.url llm.strict
//   llm.length_normalize llm.max_in_flight
//   prompts.templates prompts.demo_similarity (description|query)
//   eval.seed eval.ratios eval.jobs   serve.host serve.port

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "gmatch/config.hpp"
#include "gmatch/domain.hpp"
#include "gmatch/embedding.hpp"
#include "gmatch/evaluation.hpp"
#include "gmatch/llm.hpp"
#include "gmatch/matchers.hpp"

namespace gmatch {

struct Workspace {
  std::shared_ptr<const Glossary> glossary;
  std::vector<TableSchema> tables;
  std::vector<LabeledExample> gold;  // empty unless data.gold is set
};

/// Loads data.glossary and data.tables (both required) and data.gold when
/// present. Throws InvalidInput when a required path is missing.
Workspace load_workspace(const Settings& settings, bool require_gold = false);

std::shared_ptr<const Embedder> make_embedder(const Settings& settings);

/// A scripted backend without llm.script answers nothing (lenient) or throws
/// on every call (strict).
std::shared_ptr<LlmBackend> make_llm(const Settings& settings);

ContextOptions context_options(const Settings& settings);

/// "208:212:68" or "0.4,0.4,0.2"; values are normalized by their sum.
SplitRatios parse_ratios(std::string_view text);

inline constexpr std::string_view kDefaultRatios = "208:212:68";

}  // namespace gmatch

#endif  // GMATCH_WORKSPACE_HPP_
