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

#include <cmath>
#include <fstream>

#include "gmatch/domain.hpp"
#include "gmatch/errors.hpp"
#include "gmatch/llm.hpp"
#include "json.hpp"

namespace gmatch {

using ojson = nlohmann::ordered_json;

bool ScriptRule::matches(std::string_view prompt, std::string_view key) const {
  if (kind == MatchKind::kKey) return pattern == key;
  return prompt.find(pattern) != std::string_view::npos;
}

ScriptRule parse_script_rule(std::string_view json_line) {
  ScriptRule rule;
  try {
    const ojson j = ojson::parse(json_line);
    const ojson& match = j.at("match");
    if (match.contains("key")) {
      rule.kind = ScriptRule::MatchKind::kKey;
      rule.pattern = match.at("key").get<std::string>();
    } else if (match.contains("contains")) {
      rule.kind = ScriptRule::MatchKind::kContains;
      rule.pattern = match.at("contains").get<std::string>();
    } else {
      throw InvalidInput("rule 'match' needs 'key' or 'contains'");
    }
    if (j.contains("completion")) {
      rule.completion = j.at("completion").get<std::string>();
    }
    if (j.contains("scores")) {
      std::vector<OptionScore> scores;
      for (const auto& [option, value] : j.at("scores").items()) {
        const double lp = value.get<double>();
        if (!std::isfinite(lp) || lp > 0.0) {
          throw InvalidInput("score for '" + option + "' must be a finite log-prob <= 0");
        }
        scores.push_back({option, lp});
      }
      rule.scores = std::move(scores);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed script rule: ") + e.what());
  }
  if (!rule.completion && !rule.scores) {
    throw InvalidInput("script rule has neither 'completion' nor 'scores'");
  }
  return rule;
}

std::string format_script_rule(const ScriptRule& rule) {
  ojson j;
  j["match"][rule.kind == ScriptRule::MatchKind::kKey ? "key" : "contains"] = rule.pattern;
  if (rule.completion) j["completion"] = *rule.completion;
  if (rule.scores) {
    ojson scores = ojson::object();
    for (const OptionScore& s : *rule.scores) scores[s.option] = s.log_prob;
    j["scores"] = scores;
  }
  return j.dump();
}

ScriptedLlm::ScriptedLlm(std::vector<ScriptRule> rules, bool strict, std::string tag)
    : rules_(std::move(rules)), strict_(strict), tag_(std::move(tag)) {}

ScriptedLlm ScriptedLlm::from_file(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("cannot open script file " + path.string());
  std::vector<ScriptRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    try {
      rules.push_back(parse_script_rule(t));
    } catch (const InvalidInput& e) {
      throw IngestError(e.what(), line_no);
    }
  }
  return ScriptedLlm(std::move(rules), strict, "scripted:" + path.filename().string());
}

const ScriptRule* ScriptedLlm::find(std::string_view prompt, bool want_scores) const {
  const std::string key = prompt_key(prompt);
  for (const ScriptRule& rule : rules_) {
    if (want_scores ? !rule.scores : !rule.completion) continue;
    if (rule.matches(prompt, key)) return &rule;
  }
  return nullptr;
}

std::string ScriptedLlm::do_generate(std::string_view prompt, const GenerationParams&) {
  if (const ScriptRule* rule = find(prompt, false)) return *rule->completion;
  if (strict_) {
    throw UnscriptedPrompt("no completion scripted for prompt key " + prompt_key(prompt));
  }
  return {};
}

std::vector<double> ScriptedLlm::do_score_options(std::string_view prompt,
                                                  std::span<const std::string> options) {
  const ScriptRule* rule = find(prompt, true);
  if (rule == nullptr && strict_) {
    throw UnscriptedPrompt("no scores scripted for prompt key " + prompt_key(prompt));
  }
  std::vector<double> out(options.size(), kUnscoredLogProb);
  if (rule == nullptr) return out;
  for (std::size_t i = 0; i < options.size(); ++i) {
    for (const OptionScore& s : *rule->scores) {
      if (s.option == options[i]) {
        out[i] = s.log_prob;
        break;
      }
    }
  }
  return out;
}

}  // namespace gmatch
