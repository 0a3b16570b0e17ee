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

#ifndef GMATCH_TESTS_FIXTURES_HPP_
#define GMATCH_TESTS_FIXTURES_HPP_

#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gmatch/embedding.hpp"
#include "gmatch/llm.hpp"
#include "gmatch/matchers.hpp"

namespace testutil {

// Descriptions share no words, so the hashing embedder separates them well.
inline std::shared_ptr<const gmatch::Glossary> separable_glossary() {
  return std::make_shared<const gmatch::Glossary>(std::vector<gmatch::GlossaryItem>{
      {"g01", "Customer Identifier", "unique number assigned to each customer account"},
      {"g02", "Birth Date", "calendar day when the person was born"},
      {"g03", "Order Total", "monetary sum charged for a purchase"},
      {"g04", "Postal Code", "mailing zip for the residence"},
      {"g05", "Email Address", "electronic mail contact"},
      {"g06", "Phone Number", "telephone line reachable by voice"},
      {"g07", "Ship Date", "when goods left the warehouse"},
      {"g08", "Tax Rate", "percentage levied by government authority"},
      {"g09", "Currency", "denomination such as euro or yen"},
      {"g10", "Status", "lifecycle flag like active or closed"},
      {"g11", "Quantity", "count of units bought"},
      {"g12", "Discount", "price reduction granted as promotion"},
  });
}

inline std::shared_ptr<gmatch::ScriptedLlm> scripted(std::vector<gmatch::ScriptRule> rules,
                                                     bool strict = true) {
  return std::make_shared<gmatch::ScriptedLlm>(std::move(rules), strict);
}

inline gmatch::ScriptRule completion_for(std::string_view prompt, std::string text) {
  return {gmatch::ScriptRule::MatchKind::kKey, gmatch::prompt_key(prompt), std::move(text),
          std::nullopt};
}

inline gmatch::ScriptRule scores_for(std::string_view prompt,
                                     std::vector<gmatch::OptionScore> scores) {
  return {gmatch::ScriptRule::MatchKind::kKey, gmatch::prompt_key(prompt), std::nullopt,
          std::move(scores)};
}

inline gmatch::ScriptRule scores_containing(std::string pattern,
                                            std::vector<gmatch::OptionScore> scores) {
  return {gmatch::ScriptRule::MatchKind::kContains, std::move(pattern), std::nullopt,
          std::move(scores)};
}

inline gmatch::MatcherContext context(std::shared_ptr<const gmatch::Glossary> glossary,
                                      std::shared_ptr<gmatch::LlmBackend> llm = nullptr,
                                      gmatch::FeedbackBank bank = {}) {
  return gmatch::make_context(std::move(glossary),
                              std::make_shared<const gmatch::HashingEmbedder>(), std::move(llm),
                              std::make_shared<const gmatch::FeedbackBank>(std::move(bank)));
}

inline std::vector<std::string> ids_of(const std::vector<gmatch::MatchCandidate>& cands) {
  std::vector<std::string> out;
  for (const auto& c : cands) out.push_back(c.glossary_id);
  return out;
}

inline std::vector<std::string> ids_of(const std::vector<gmatch::ScoredId>& hits) {
  std::vector<std::string> out;
  for (const auto& h : hits) out.push_back(h.id);
  return out;
}

// The ids knn() would return for `text` against the context's index.
inline std::vector<std::string> knn_ids(const gmatch::MatcherContext& ctx, const std::string& text,
                                        std::size_t k) {
  return ids_of(gmatch::knn(*ctx.description_index, ctx.embedder->embed(text), k));
}

// A scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("gmatch_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil

#endif  // GMATCH_TESTS_FIXTURES_HPP_
