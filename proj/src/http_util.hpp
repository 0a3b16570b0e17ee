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

#ifndef GMATCH_SRC_HTTP_UTIL_HPP_
#define GMATCH_SRC_HTTP_UTIL_HPP_

#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <string>

#include "gmatch/remote.hpp"
#include "json.hpp"

namespace gmatch {

class InFlightLimiter {
 public:
  explicit InFlightLimiter(std::size_t limit) : free_(limit == 0 ? 1 : limit) {}

  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [&] { return free_ > 0; });
    --free_;
  }

  void release() {
    {
      std::lock_guard lock(mu_);
      ++free_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t free_;
};

/// POSTs `body` to base_url + path and parses the JSON reply. Connection
/// failures, 429 and 5xx are retried with exponential backoff; anything else
/// (or running out of attempts) throws BackendUnavailable.
nlohmann::json post_json(const std::string& base_url, const std::string& path,
                         const nlohmann::json& body, const RemoteOptions& options,
                         InFlightLimiter& limiter);

}  // namespace gmatch

#endif  // GMATCH_SRC_HTTP_UTIL_HPP_
