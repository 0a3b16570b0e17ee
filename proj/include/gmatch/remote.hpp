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

#ifndef GMATCH_REMOTE_HPP_
#define GMATCH_REMOTE_HPP_

// HTTP clients for model servers:
//   POST /v1/embed     {"texts": [...]}                  -> {"dims", "vectors"}
//   POST /v1/generate  {"prompt", "max_new_tokens", "temperature", "stop"}
//                                                        -> {"text"}
//   POST /v1/score     {"prompt", "options"}             -> {"log_probs"}

#include <atomic>
#include <chrono>
#include <memory>
#include <string>

#include "gmatch/embedding.hpp"
#include "gmatch/llm.hpp"

namespace gmatch {

struct RemoteOptions {
  std::size_t max_in_flight = 4;
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{100};
  std::chrono::seconds timeout{60};
};

class InFlightLimiter;

/// Remote sentence embedder. Texts go out in batches of at most kBatchSize;
/// returned vectors are normalized client-side.
class RemoteEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kBatchSize = 64;

  explicit RemoteEmbedder(std::string base_url, RemoteOptions options = {});
  ~RemoteEmbedder() override;

  std::size_t dims() const override { return dims_.load(); }
  std::string name() const override { return "remote"; }

 protected:
  std::vector<EmbeddingVector> do_embed_batch(
      std::span<const std::string> texts) const override;

 private:
  std::string base_url_;
  RemoteOptions options_;
  std::unique_ptr<InFlightLimiter> limiter_;
  mutable std::atomic<std::size_t> dims_{0};
};

/// Remote LLM. Option scores are the server's summed token log-probs of each
/// option as a continuation of the prompt; with `length_normalize` the request
/// asks the server to divide by option token count instead.
class RemoteLlm final : public LlmBackend {
 public:
  RemoteLlm(std::string base_url, RemoteOptions options = {},
            bool length_normalize = false);
  ~RemoteLlm() override;

  std::size_t max_in_flight() const override { return options_.max_in_flight; }
  std::string name() const override { return "remote"; }

 protected:
  std::string do_generate(std::string_view prompt,
                          const GenerationParams& params) override;
  std::vector<double> do_score_options(std::string_view prompt,
                                       std::span<const std::string> options) override;

 private:
  std::string base_url_;
  RemoteOptions options_;
  bool length_normalize_;
  std::unique_ptr<InFlightLimiter> limiter_;
};

}  // namespace gmatch

#endif  // GMATCH_REMOTE_HPP_
