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

#ifndef GMATCH_SERVICE_HPP_
#define GMATCH_SERVICE_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "gmatch/domain.hpp"
#include "gmatch/feedback_store.hpp"
#include "gmatch/matchers.hpp"

namespace gmatch {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path reports_dir;  // served by GET /api/reports when set
};

/// REST front end over one glossary, its tables and the feedback bank.
///
///   GET  /api/health
///   GET  /api/glossary?query=&limit=
///   GET  /api/tables
///   GET  /api/tables/{table}/columns
///   POST /api/match     {"table","column","method","k","k1","shots"}
///   POST /api/feedback  {"table","column","glossary_id"}
///   GET  /api/feedback
///   GET  /api/reports
///
/// Match requests work on an immutable context snapshot; an accepted
/// feedback entry is persisted first and then published as a new snapshot,
/// so readers never see a half-applied bank.
class MatchService {
 public:
  /// `store` may be null for an in-memory bank seeded from ctx.bank.
  MatchService(MatcherContext ctx, std::vector<TableSchema> tables,
               std::shared_ptr<FeedbackStore> store, ServiceOptions options = {});
  ~MatchService();

  MatchService(const MatchService&) = delete;
  MatchService& operator=(const MatchService&) = delete;

  /// Binds the listening socket and returns the bound port. Throws Error when
  /// the port is unavailable.
  int bind();

  /// Serves until stop(). Calls bind() first if needed.
  void listen();

  /// Stops accepting; requests already running complete.
  void stop();

  bool is_running() const;

  std::size_t feedback_count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gmatch

#endif  // GMATCH_SERVICE_HPP_
