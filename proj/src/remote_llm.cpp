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

#include "gmatch/errors.hpp"
#include "gmatch/remote.hpp"
#include "http_util.hpp"

namespace gmatch {

RemoteLlm::RemoteLlm(std::string base_url, RemoteOptions options, bool length_normalize)
    : base_url_(std::move(base_url)),
      options_(options),
      length_normalize_(length_normalize),
      limiter_(std::make_unique<InFlightLimiter>(options.max_in_flight)) {}

RemoteLlm::~RemoteLlm() = default;

std::string RemoteLlm::do_generate(std::string_view prompt, const GenerationParams& params) {
  nlohmann::json body;
  body["prompt"] = std::string(prompt);
  body["max_new_tokens"] = params.max_new_tokens;
  body["temperature"] = params.temperature;
  body["stop"] = params.stop_sequences;
  const nlohmann::json reply = post_json(base_url_, "/v1/generate", body, options_, *limiter_);
  try {
    return reply.at("text").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendUnavailable(std::string("malformed generate reply: ") + e.what());
  }
}

std::vector<double> RemoteLlm::do_score_options(std::string_view prompt,
                                                std::span<const std::string> options) {
  nlohmann::json body;
  body["prompt"] = std::string(prompt);
  body["options"] = std::vector<std::string>(options.begin(), options.end());
  if (length_normalize_) body["normalize"] = true;
  const nlohmann::json reply = post_json(base_url_, "/v1/score", body, options_, *limiter_);
  try {
    return reply.at("log_probs").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendUnavailable(std::string("malformed score reply: ") + e.what());
  }
}

}  // namespace gmatch
