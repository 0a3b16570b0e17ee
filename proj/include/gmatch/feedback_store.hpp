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

#ifndef GMATCH_FEEDBACK_STORE_HPP_
#define GMATCH_FEEDBACK_STORE_HPP_

#include <filesystem>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "gmatch/domain.hpp"

namespace gmatch {

/// {"table","column","siblings","glossary_id","confirmed_at"} on one line.
std::string format_feedback_line(const FeedbackEntry& entry);
FeedbackEntry parse_feedback_line(std::string_view line);

/// Append-only JSONL feedback log. Each append is one write() followed by
/// fsync(); a torn final line left by a crash is ignored on load and cut off
/// before the next append. Appends exclude loads; loads may overlap.
class FeedbackStore {
 public:
  explicit FeedbackStore(std::filesystem::path path) : path_(std::move(path)) {}

  /// Replays the log, collapsing repeated (query, glossary_id) pairs. A
  /// missing file is an empty bank. Throws IngestError naming the bad line.
  FeedbackBank load() const;

  /// Throws InvalidInput if the entry's glossary id is unknown or its query
  /// is invalid.
  void append(const FeedbackEntry& entry, const Glossary& glossary);

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::shared_mutex mu_;
};

}  // namespace gmatch

#endif  // GMATCH_FEEDBACK_STORE_HPP_
