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

#include "gmatch/llm.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <set>

#include "gmatch/domain.hpp"
#include "gmatch/errors.hpp"

namespace gmatch {

std::string truncate_at_stop(std::string text, std::span<const std::string> stops) {
  std::size_t cut = text.size();
  for (const std::string& stop : stops) {
    if (stop.empty()) continue;
    cut = std::min(cut, text.find(stop));
  }
  text.resize(cut);
  return text;
}

std::size_t argmax_option(std::span<const OptionScore> scores) {
  if (scores.empty()) throw InvalidInput("argmax over no options");
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].log_prob > scores[best].log_prob) best = i;
  }
  return best;
}

std::string LlmBackend::generate(std::string_view prompt, const GenerationParams& params) {
  if (trim(prompt).empty()) throw InvalidInput("prompt is empty");
  if (params.max_new_tokens <= 0) throw InvalidInput("max_new_tokens must be positive");
  if (!(params.temperature >= 0.0)) throw InvalidInput("temperature must be >= 0");
  return truncate_at_stop(do_generate(prompt, params), params.stop_sequences);
}

std::vector<OptionScore> LlmBackend::score_options(std::string_view prompt,
                                                   std::span<const std::string> options) {
  if (trim(prompt).empty()) throw InvalidInput("prompt is empty");
  if (options.empty()) throw InvalidInput("no options to score");
  std::set<std::string_view> seen;
  for (const std::string& o : options) {
    if (o.empty()) throw InvalidInput("empty option");
    if (!seen.insert(o).second) throw InvalidInput("duplicate option '" + o + "'");
  }
  std::vector<double> raw = do_score_options(prompt, options);
  if (raw.size() != options.size()) {
    throw BackendUnavailable("backend returned " + std::to_string(raw.size()) +
                             " scores for " + std::to_string(options.size()) + " options");
  }
  std::vector<OptionScore> out;
  out.reserve(options.size());
  for (std::size_t i = 0; i < options.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw BackendUnavailable("non-finite log-prob for option '" + options[i] + "'");
    }
    out.push_back({options[i], raw[i]});
  }
  return out;
}

std::string prompt_key(std::string_view prompt) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(prompt.data(), prompt.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0x0f]);
  }
  return hex;
}

}  // namespace gmatch
