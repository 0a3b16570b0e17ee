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

#include <thread>

#include "gmatch/errors.hpp"
#include "gmatch/parallel.hpp"
#include "gmatch/remote.hpp"
#include "http_util.hpp"
#include "httplib.h"

namespace gmatch {

nlohmann::json post_json(const std::string& base_url, const std::string& path,
                         const nlohmann::json& body, const RemoteOptions& options,
                         InFlightLimiter& limiter) {
  const std::string payload = body.dump();
  auto backoff = options.initial_backoff;
  std::string last_error = "no attempt made";
  const int attempts = std::max(options.attempts, 1);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    limiter.acquire();
    httplib::Result res = [&] {
      httplib::Client client(base_url);
      client.set_connection_timeout(options.timeout);
      client.set_read_timeout(options.timeout);
      client.set_write_timeout(options.timeout);
      return client.Post(path, payload, "application/json");
    }();
    limiter.release();

    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
    } else if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
    } else if (res->status != 200) {
      throw BackendUnavailable(base_url + path + " answered HTTP " +
                               std::to_string(res->status) + ": " + res->body);
    } else {
      try {
        return nlohmann::json::parse(res->body);
      } catch (const nlohmann::json::exception& e) {
        throw BackendUnavailable(base_url + path + " sent invalid JSON: " + e.what());
      }
    }
    if (attempt < attempts) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
  }
  throw BackendUnavailable(base_url + path + " unavailable after " +
                           std::to_string(attempts) + " attempts (" + last_error + ")");
}

RemoteEmbedder::RemoteEmbedder(std::string base_url, RemoteOptions options)
    : base_url_(std::move(base_url)),
      options_(options),
      limiter_(std::make_unique<InFlightLimiter>(options.max_in_flight)) {}

RemoteEmbedder::~RemoteEmbedder() = default;

std::vector<EmbeddingVector> RemoteEmbedder::do_embed_batch(
    std::span<const std::string> texts) const {
  const std::size_t batches = (texts.size() + kBatchSize - 1) / kBatchSize;
  std::vector<EmbeddingVector> out(texts.size());
  bounded_for_each(batches, options_.max_in_flight, [&](std::size_t b) {
    const std::size_t begin = b * kBatchSize;
    const std::size_t end = std::min(begin + kBatchSize, texts.size());
    nlohmann::json body;
    body["texts"] = std::vector<std::string>(texts.begin() + begin, texts.begin() + end);
    const nlohmann::json reply = post_json(base_url_, "/v1/embed", body, options_, *limiter_);
    try {
      const auto dims = reply.at("dims").get<std::size_t>();
      const auto& vectors = reply.at("vectors");
      if (vectors.size() != end - begin) {
        throw BackendUnavailable("embed reply has " + std::to_string(vectors.size()) +
                                 " vectors for " + std::to_string(end - begin) + " texts");
      }
      for (std::size_t i = 0; i < vectors.size(); ++i) {
        auto values = vectors[i].get<std::vector<double>>();
        if (values.size() != dims) {
          throw BackendUnavailable("embed reply vector length disagrees with dims");
        }
        out[begin + i] = EmbeddingVector::normalized(std::move(values));
      }
      std::size_t expected = 0;
      if (!dims_.compare_exchange_strong(expected, dims) && expected != dims) {
        throw BackendUnavailable("embedding server changed dims");
      }
    } catch (const nlohmann::json::exception& e) {
      throw BackendUnavailable(std::string("malformed embed reply: ") + e.what());
    } catch (const InvalidInput& e) {
      throw BackendUnavailable(std::string("unusable embed reply: ") + e.what());
    }
  });
  return out;
}

}  // namespace gmatch
