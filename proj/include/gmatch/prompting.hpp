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

#ifndef GMATCH_PROMPTING_HPP_
#define GMATCH_PROMPTING_HPP_

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmatch/domain.hpp"
#include "gmatch/embedding.hpp"

namespace gmatch {

/// A worked example shown to the LLM: metadata text and the confirmed
/// glossary description for it.
struct Demonstration {
  std::string query_text;
  std::string description;

  friend bool operator==(const Demonstration&, const Demonstration&) = default;
};

/// Answer token and what it stands for; nullopt is the "none" answer.
struct OptionBinding {
  std::string token;
  std::optional<std::string> glossary_id;

  friend bool operator==(const OptionBinding&, const OptionBinding&) = default;
};

struct PromptBundle {
  std::string prompt;
  std::vector<OptionBinding> options;

  std::vector<std::string> tokens() const;
};

/// Prompt texts with {{query}}, {{description}}, {{options}} and
/// {{demonstrations}} placeholders. The shipped defaults live in
/// templates/v1/ and are compiled in as well.
struct PromptTemplates {
  std::string micl;
  std::string binary_description;
  std::string binary_direct;
  std::string mcqa;

  static const PromptTemplates& defaults();

  /// Reads micl.txt, binary_description.txt, binary_direct.txt and mcqa.txt
  /// from `dir`; one trailing newline per file is dropped.
  static PromptTemplates load(const std::filesystem::path& dir);

  friend bool operator==(const PromptTemplates&, const PromptTemplates&) = default;
};

/// Single-pass substitution: inserted values are never rescanned. Throws
/// InvalidInput on a placeholder that has no value.
std::string fill_template(std::string_view tpl,
                          const std::map<std::string, std::string, std::less<>>& values);

/// What a bank entry is compared against when picking demonstrations.
enum class DemoSimilarity {
  kDescription,  // the confirmed glossary description
  kQuery,        // the entry's own metadata text
};

/// Feedback bank embedded once so repeated selections only embed the query.
class DemonstrationIndex {
 public:
  DemonstrationIndex() = default;
  DemonstrationIndex(const FeedbackBank& bank, const Glossary& glossary,
                     const Embedder& embedder,
                     DemoSimilarity similarity = DemoSimilarity::kDescription);

  /// The e entries closest to the query's canonical text, best first; equal
  /// scores keep bank order. Throws InvalidInput if e exceeds size().
  std::vector<Demonstration> select(const ColumnQuery& query, std::size_t e,
                                    const Embedder& embedder) const;

  std::size_t size() const { return demos_.size(); }

 private:
  std::vector<Demonstration> demos_;
  CosineIndex index_;
};

std::vector<Demonstration> select_demonstrations(
    const ColumnQuery& query, const FeedbackBank& bank, const Glossary& glossary,
    std::size_t e, const Embedder& embedder,
    DemoSimilarity similarity = DemoSimilarity::kDescription);

inline constexpr std::string_view kYes = "Yes";
inline constexpr std::string_view kNo = "No";
inline constexpr std::string_view kNoneOfTheAbove = "None of the above";
inline constexpr std::size_t kMaxMcqaChoices = 25;

PromptBundle render_micl_prompt(const ColumnQuery& query,
                                std::span<const Demonstration> demos,
                                const PromptTemplates& templates = PromptTemplates::defaults());

/// Yes/No prompt; Yes binds to the item, No to none. `direct` picks the
/// direct-inference wording.
PromptBundle render_binary_prompt(const ColumnQuery& query, const GlossaryItem& item,
                                  bool direct,
                                  const PromptTemplates& templates = PromptTemplates::defaults());

/// Lettered choices in input order; with include_none one more letter for
/// "None of the above". Throws InvalidInput outside 1..25 choices.
PromptBundle render_mcqa_prompt(const ColumnQuery& query,
                                std::span<const GlossaryItem> choices, bool include_none,
                                const PromptTemplates& templates = PromptTemplates::defaults());

/// The canonical text and the description joined by " \u2014 " (space, em
/// dash, space), or the canonical text alone when the description is blank.
std::string compose_final_description(const ColumnQuery& query,
                                      std::string_view llm_description);

}  // namespace gmatch

#endif  // GMATCH_PROMPTING_HPP_
