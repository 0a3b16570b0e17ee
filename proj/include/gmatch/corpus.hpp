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

#ifndef GMATCH_CORPUS_HPP_
#define GMATCH_CORPUS_HPP_

#include <cstdint>
#include <vector>

#include "gmatch/domain.hpp"
#include "gmatch/evaluation.hpp"
#include "gmatch/llm.hpp"

namespace gmatch {

struct CorpusOptions {
  std::uint64_t seed = 0;
  std::size_t glossary_size = 500;
  std::size_t tables = 20;
  std::size_t columns_per_table = 10;
  double null_fraction = 0.1;
  /// Share of mapped columns renamed to opaque codes whose 3-grams never
  /// occur in the gold description.
  double cryptic_fraction = 0.0;
};

struct Corpus {
  Glossary glossary;
  std::vector<TableSchema> tables;
  std::vector<LabeledExample> examples;  // one per column, table order
};

/// Seeded enterprise-style corpus. Labels combine a qualifier, an entity and
/// an attribute from fixed word pools; mapped columns are named from
/// abbreviations or spellings of their gold item's words, so they share
/// 3-grams with the gold description unless made cryptic.
Corpus generate_synthetic_corpus(const CorpusOptions& options);

/// Script rules for a perfect LLM over `examples`: zero-shot description
/// prompts complete with the gold description, Yes/No prompts answer Yes only
/// for the gold item, and multiple-choice prompts pick the first option.
std::vector<ScriptRule> oracle_script(const Glossary& glossary,
                                      std::span<const LabeledExample> examples);

}  // namespace gmatch

#endif  // GMATCH_CORPUS_HPP_
