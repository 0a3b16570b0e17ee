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

#include "gmatch/prompting.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gmatch/errors.hpp"

namespace gmatch {

namespace {

constexpr std::string_view kMiclTemplate =
    "Generate a short business description of the column.\n"
    "\n"
    "{{demonstrations}}Column: {{query}}\n"
    "Description:";

constexpr std::string_view kBinaryDescriptionTemplate =
    "Column metadata: {{query}}\n"
    "Glossary description: {{description}}\n"
    "Is the glossary description a potential description of the column metadata? "
    "Answer Yes or No.\n"
    "Answer:";

constexpr std::string_view kBinaryDirectTemplate =
    "Column metadata: {{query}}\n"
    "Glossary description: {{description}}\n"
    "Does the description of this glossary item match the column metadata? "
    "Answer Yes or No.\n"
    "Answer:";

constexpr std::string_view kMcqaTemplate =
    "Choose the best description of the column metadata from the options below.\n"
    "Column metadata: {{query}}\n"
    "Options:\n"
    "{{options}}\n"
    "Answer:";

std::string read_template(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open template " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  if (text.ends_with("\r\n")) {
    text.resize(text.size() - 2);
  } else if (text.ends_with('\n')) {
    text.pop_back();
  }
  return text;
}

// Bank ordinals as zero-padded ids so the index's id tie-break is bank order.
std::string ordinal_id(std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%012zu", i);
  return buf;
}

}  // namespace

std::vector<std::string> PromptBundle::tokens() const {
  std::vector<std::string> out;
  out.reserve(options.size());
  for (const OptionBinding& o : options) out.push_back(o.token);
  return out;
}

const PromptTemplates& PromptTemplates::defaults() {
  static const PromptTemplates kDefaults{
      std::string(kMiclTemplate), std::string(kBinaryDescriptionTemplate),
      std::string(kBinaryDirectTemplate), std::string(kMcqaTemplate)};
  return kDefaults;
}

PromptTemplates PromptTemplates::load(const std::filesystem::path& dir) {
  return PromptTemplates{read_template(dir / "micl.txt"),
                         read_template(dir / "binary_description.txt"),
                         read_template(dir / "binary_direct.txt"),
                         read_template(dir / "mcqa.txt")};
}

std::string fill_template(std::string_view tpl,
                          const std::map<std::string, std::string, std::less<>>& values) {
  std::string out;
  out.reserve(tpl.size() + 256);
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    const std::size_t open = tpl.find("{{", pos);
    if (open == std::string_view::npos) break;
    const std::size_t close = tpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    const std::string_view name = tpl.substr(open + 2, close - open - 2);
    auto it = values.find(name);
    if (it == values.end()) {
      throw InvalidInput("template placeholder {{" + std::string(name) + "}} has no value");
    }
    out.append(tpl.substr(pos, open - pos));
    out.append(it->second);
    pos = close + 2;
  }
  out.append(tpl.substr(pos));
  return out;
}

DemonstrationIndex::DemonstrationIndex(const FeedbackBank& bank, const Glossary& glossary,
                                       const Embedder& embedder, DemoSimilarity similarity) {
  std::vector<IndexItem> items;
  items.reserve(bank.size());
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const FeedbackEntry& entry = bank.entries()[i];
    Demonstration demo{canonical_query_text(entry.query),
                       glossary.at(entry.glossary_id).description};
    items.push_back({ordinal_id(i), similarity == DemoSimilarity::kDescription
                                        ? demo.description
                                        : demo.query_text});
    demos_.push_back(std::move(demo));
  }
  index_ = build_index(items, embedder);
}

std::vector<Demonstration> DemonstrationIndex::select(const ColumnQuery& query,
                                                      std::size_t e,
                                                      const Embedder& embedder) const {
  if (e > demos_.size()) {
    throw InvalidInput("requested " + std::to_string(e) + " demonstrations but the bank has " +
                       std::to_string(demos_.size()));
  }
  if (e == 0) return {};
  const auto hits = knn(index_, embedder.embed(canonical_query_text(query)), e);
  std::vector<Demonstration> out;
  out.reserve(hits.size());
  for (const ScoredId& hit : hits) {
    out.push_back(demos_[static_cast<std::size_t>(std::stoull(hit.id))]);
  }
  return out;
}

std::vector<Demonstration> select_demonstrations(const ColumnQuery& query,
                                                 const FeedbackBank& bank,
                                                 const Glossary& glossary, std::size_t e,
                                                 const Embedder& embedder,
                                                 DemoSimilarity similarity) {
  if (e > bank.size()) {
    throw InvalidInput("requested " + std::to_string(e) + " demonstrations but the bank has " +
                       std::to_string(bank.size()));
  }
  if (e == 0) return {};
  return DemonstrationIndex(bank, glossary, embedder, similarity).select(query, e, embedder);
}

PromptBundle render_micl_prompt(const ColumnQuery& query,
                                std::span<const Demonstration> demos,
                                const PromptTemplates& templates) {
  std::string blocks;
  for (const Demonstration& d : demos) {
    blocks += "Column: " + d.query_text + "\nDescription: " + d.description + "\n\n";
  }
  return PromptBundle{fill_template(templates.micl, {{"query", canonical_query_text(query)},
                                                     {"demonstrations", blocks}}),
                      {}};
}

PromptBundle render_binary_prompt(const ColumnQuery& query, const GlossaryItem& item,
                                  bool direct, const PromptTemplates& templates) {
  PromptBundle bundle;
  bundle.prompt =
      fill_template(direct ? templates.binary_direct : templates.binary_description,
                    {{"query", canonical_query_text(query)}, {"description", item.description}});
  bundle.options = {{std::string(kYes), item.id}, {std::string(kNo), std::nullopt}};
  return bundle;
}

PromptBundle render_mcqa_prompt(const ColumnQuery& query,
                                std::span<const GlossaryItem> choices, bool include_none,
                                const PromptTemplates& templates) {
  if (choices.empty() || choices.size() > kMaxMcqaChoices) {
    throw InvalidInput("MCQA needs 1.." + std::to_string(kMaxMcqaChoices) + " choices, got " +
                       std::to_string(choices.size()));
  }
  PromptBundle bundle;
  std::string lines;
  auto add = [&](std::string_view text, std::optional<std::string> id) {
    const std::string letter(1, static_cast<char>('A' + bundle.options.size()));
    if (!lines.empty()) lines += "\n";
    lines += letter + ". " + std::string(text);
    bundle.options.push_back({letter, std::move(id)});
  };
  for (const GlossaryItem& item : choices) add(item.description, item.id);
  if (include_none) add(kNoneOfTheAbove, std::nullopt);
  bundle.prompt = fill_template(templates.mcqa, {{"query", canonical_query_text(query)},
                                                 {"options", lines}});
  return bundle;
}

std::string compose_final_description(const ColumnQuery& query,
                                      std::string_view llm_description) {
  std::string canonical = canonical_query_text(query);
  const std::string description = trim(llm_description);
  if (description.empty()) return canonical;
  return canonical + " — " + description;
}

}  // namespace gmatch
