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

#include "gmatch/feedback_store.hpp"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <mutex>

#include "gmatch/csv.hpp"
#include "gmatch/errors.hpp"
#include "json.hpp"

namespace gmatch {

using ojson = nlohmann::ordered_json;

namespace {

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  int get() const { return fd_; }

 private:
  int fd_;
};

[[noreturn]] void fail(const std::string& what, const std::filesystem::path& path) {
  throw Error(what + " " + path.string() + ": " + std::strerror(errno));
}

// Drops bytes after the last newline, left behind by an interrupted append.
void cut_torn_tail(int fd, const std::filesystem::path& path) {
  struct stat st {};
  if (::fstat(fd, &st) != 0) fail("cannot stat", path);
  off_t end = st.st_size;
  if (end == 0) return;
  char c = 0;
  off_t pos = end;
  while (pos > 0) {
    if (::pread(fd, &c, 1, pos - 1) != 1) fail("cannot read", path);
    if (c == '\n') break;
    --pos;
  }
  if (pos != end && ::ftruncate(fd, pos) != 0) fail("cannot truncate", path);
}

}  // namespace

std::string format_feedback_line(const FeedbackEntry& entry) {
  ojson j;
  j["table"] = entry.query.table_name;
  j["column"] = entry.query.column_name;
  j["siblings"] = entry.query.sibling_columns;
  j["glossary_id"] = entry.glossary_id;
  j["confirmed_at"] = entry.confirmed_at;
  return j.dump();
}

FeedbackEntry parse_feedback_line(std::string_view line) {
  try {
    const ojson j = ojson::parse(line);
    FeedbackEntry entry;
    entry.query.table_name = j.at("table").get<std::string>();
    entry.query.column_name = j.at("column").get<std::string>();
    entry.query.sibling_columns = j.at("siblings").get<std::vector<std::string>>();
    entry.glossary_id = j.at("glossary_id").get<std::string>();
    entry.confirmed_at = j.at("confirmed_at").get<std::int64_t>();
    validate_query(entry.query);
    if (entry.glossary_id.empty()) throw InvalidInput("empty glossary_id");
    return entry;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed feedback entry: ") + e.what());
  }
}

FeedbackBank FeedbackStore::load() const {
  std::shared_lock lock(mu_);
  FeedbackBank bank;
  if (!std::filesystem::exists(path_)) return bank;
  const std::string text = read_text_file(path_);
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos < text.size()) {
    ++line_no;
    const std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) break;  // torn final line
    std::string_view line(text.data() + pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = nl + 1;
    if (trim(line).empty()) continue;
    try {
      bank.add(parse_feedback_line(line));
    } catch (const InvalidInput& e) {
      throw IngestError(e.what(), line_no);
    }
  }
  return bank;
}

void FeedbackStore::append(const FeedbackEntry& entry, const Glossary& glossary) {
  validate_query(entry.query);
  if (!glossary.contains(entry.glossary_id)) {
    throw InvalidInput("unknown glossary id '" + entry.glossary_id + "'");
  }
  const std::string line = format_feedback_line(entry) + "\n";

  std::unique_lock lock(mu_);
  Fd fd(::open(path_.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644));
  if (fd.get() < 0) fail("cannot open", path_);
  cut_torn_tail(fd.get(), path_);
  if (::lseek(fd.get(), 0, SEEK_END) < 0) fail("cannot seek", path_);
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd.get(), line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      fail("cannot append to", path_);
    }
    written += static_cast<std::size_t>(n);
  }
  if (::fsync(fd.get()) != 0) fail("cannot fsync", path_);
}

}  // namespace gmatch
