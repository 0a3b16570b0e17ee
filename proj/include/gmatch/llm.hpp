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

#ifndef GMATCH_LLM_HPP_
#define GMATCH_LLM_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gmatch {

struct GenerationParams {
  int max_new_tokens = 64;
  double temperature = 0.0;  // 0 = greedy
  std::vector<std::string> stop_sequences;
};

struct OptionScore {
  std::string option;
  double log_prob = 0.0;

  friend bool operator==(const OptionScore&, const OptionScore&) = default;
};

/// Cuts `text` at the earliest occurrence of any stop sequence.
std::string truncate_at_stop(std::string text, std::span<const std::string> stops);

/// Index of the highest log-prob; the earliest option wins a tie.
std::size_t argmax_option(std::span<const OptionScore> scores);

/// Text-generation and option-scoring capability. Public entry points check
/// preconditions and post-process; backends implement the do_* hooks.
class LlmBackend {
 public:
  virtual ~LlmBackend() = default;

  /// Throws InvalidInput for an empty prompt or bad params.
  std::string generate(std::string_view prompt, const GenerationParams& params);

  /// One score per option, input order. Options must be non-empty and
  /// distinct.
  std::vector<OptionScore> score_options(std::string_view prompt,
                                         std::span<const std::string> options);

  /// How many calls a caller may usefully keep in flight at once.
  virtual std::size_t max_in_flight() const { return 1; }

  virtual std::string name() const = 0;

 protected:
  virtual std::string do_generate(std::string_view prompt,
                                  const GenerationParams& params) = 0;
  virtual std::vector<double> do_score_options(
      std::string_view prompt, std::span<const std::string> options) = 0;
};

/// Lowercase hex SHA-256 of the prompt; the lookup key of scripted rules.
std::string prompt_key(std::string_view prompt);

struct ScriptRule {
  enum class MatchKind { kKey, kContains };
  MatchKind kind = MatchKind::kContains;
  std::string pattern;  // hex key or substring
  std::optional<std::string> completion;
  std::optional<std::vector<OptionScore>> scores;

  bool matches(std::string_view prompt, std::string_view key) const;
};

/// Parses one JSONL script line. Throws InvalidInput when malformed.
ScriptRule parse_script_rule(std::string_view json_line);
std::string format_script_rule(const ScriptRule& rule);

/// Deterministic backend for tests and offline evaluation. Rules are tried in
/// order; the first rule that matches the prompt and carries the requested
/// capability (a completion for generate, a score table for score_options)
/// answers. Options missing from a score table get kUnscoredLogProb.
///
/// Strict mode throws UnscriptedPrompt when nothing answers; lenient mode
/// returns an empty completion or kUnscoredLogProb for every option.
class ScriptedLlm final : public LlmBackend {
 public:
  static constexpr double kUnscoredLogProb = -100.0;

  ScriptedLlm(std::vector<ScriptRule> rules, bool strict, std::string tag = "scripted");

  /// Loads a JSONL script; blank lines and lines starting with '#' are skipped.
  static ScriptedLlm from_file(const std::filesystem::path& path, bool strict);

  std::string name() const override { return tag_; }
  std::span<const ScriptRule> rules() const { return rules_; }

 protected:
  std::string do_generate(std::string_view prompt,
                          const GenerationParams& params) override;
  std::vector<double> do_score_options(std::string_view prompt,
                                       std::span<const std::string> options) override;

 private:
  const ScriptRule* find(std::string_view prompt, bool want_scores) const;

  std::vector<ScriptRule> rules_;
  bool strict_;
  std::string tag_;
};

}  // namespace gmatch

#endif  // GMATCH_LLM_HPP_
