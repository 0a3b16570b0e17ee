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

#include "gmatch/service.hpp"

#include <algorithm>
#include <chrono>
#include <mutex>

#include "gmatch/csv.hpp"
#include "gmatch/errors.hpp"
#include "gmatch/evaluation.hpp"
#include "gmatch/ingest.hpp"
#include "httplib.h"
#include "json.hpp"

namespace gmatch {

using ojson = nlohmann::ordered_json;

namespace {

void send_json(httplib::Response& res, int status, const ojson& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, ojson{{"error", message}});
}

std::string lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

int int_field(const ojson& body, const char* key, int fallback) {
  if (!body.contains(key) || body.at(key).is_null()) return fallback;
  if (!body.at(key).is_number_integer()) {
    throw InvalidInput(std::string("'") + key + "' must be an integer");
  }
  return body.at(key).get<int>();
}

std::string string_field(const ojson& body, const char* key) {
  if (!body.contains(key) || !body.at(key).is_string()) {
    throw InvalidInput(std::string("'") + key + "' must be a string");
  }
  return body.at(key).get<std::string>();
}

}  // namespace

struct MatchService::Impl {
  ServiceOptions options;
  std::vector<TableSchema> tables;
  std::shared_ptr<FeedbackStore> store;
  httplib::Server server;
  int bound_port = -1;

  mutable std::mutex snapshot_mu;                 // guards `snapshot`
  std::shared_ptr<const MatcherContext> snapshot;
  std::mutex append_mu;                           // serializes feedback writers

  std::shared_ptr<const MatcherContext> current() const {
    std::lock_guard lock(snapshot_mu);
    return snapshot;
  }

  void publish(std::shared_ptr<const MatcherContext> next) {
    std::lock_guard lock(snapshot_mu);
    snapshot = std::move(next);
  }

  // Null when the table or column is unknown.
  std::optional<ColumnQuery> lookup(const std::string& table, const std::string& column) const {
    const TableSchema* schema = find_table(tables, table);
    if (schema == nullptr ||
        std::find(schema->columns.begin(), schema->columns.end(), column) ==
            schema->columns.end()) {
      return std::nullopt;
    }
    return make_query(table, schema->columns, column);
  }

  void routes();
  void handle_match(const httplib::Request& req, httplib::Response& res);
  void handle_feedback_post(const httplib::Request& req, httplib::Response& res);
};

void MatchService::Impl::routes() {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });

  server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, ojson{{"status", "ok"}});
  });

  server.Get("/api/glossary", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string needle = lower(req.get_param_value("query"));
    std::size_t limit = 50;
    if (req.has_param("limit")) {
      try {
        limit = std::stoul(req.get_param_value("limit"));
      } catch (const std::exception&) {
        send_error(res, 400, "limit must be a non-negative integer");
        return;
      }
    }
    const auto ctx = current();
    ojson items = ojson::array();
    std::size_t total = 0;
    for (const GlossaryItem& item : ctx->glossary->items()) {
      if (!needle.empty() && lower(item.label).find(needle) == std::string::npos) continue;
      ++total;
      if (items.size() < limit) {
        items.push_back({{"id", item.id}, {"label", item.label}, {"description", item.description}});
      }
    }
    send_json(res, 200, ojson{{"total", total}, {"items", std::move(items)}});
  });

  server.Get("/api/tables", [this](const httplib::Request&, httplib::Response& res) {
    ojson out = ojson::array();
    for (const TableSchema& t : tables) out.push_back({{"table", t.name}, {"columns", t.columns}});
    send_json(res, 200, ojson{{"tables", std::move(out)}});
  });

  server.Get(R"(/api/tables/([^/]+)/columns)",
             [this](const httplib::Request& req, httplib::Response& res) {
               const std::string name = req.matches[1];
               const TableSchema* t = find_table(tables, name);
               if (t == nullptr) {
                 send_error(res, 404, "unknown table '" + name + "'");
                 return;
               }
               send_json(res, 200, ojson{{"table", t->name}, {"columns", t->columns}});
             });

  server.Post("/api/match", [this](const httplib::Request& req, httplib::Response& res) {
    handle_match(req, res);
  });

  server.Post("/api/feedback", [this](const httplib::Request& req, httplib::Response& res) {
    handle_feedback_post(req, res);
  });

  server.Get("/api/feedback", [this](const httplib::Request&, httplib::Response& res) {
    const auto ctx = current();
    ojson entries = ojson::array();
    for (const FeedbackEntry& e : ctx->bank->entries()) {
      const GlossaryItem* item = ctx->glossary->find(e.glossary_id);
      entries.push_back({{"table", e.query.table_name},
                         {"column", e.query.column_name},
                         {"siblings", e.query.sibling_columns},
                         {"glossary_id", e.glossary_id},
                         {"label", item ? item->label : ""},
                         {"confirmed_at", e.confirmed_at}});
    }
    send_json(res, 200, ojson{{"count", ctx->bank->size()}, {"entries", std::move(entries)}});
  });

  server.Get("/api/reports", [this](const httplib::Request&, httplib::Response& res) {
    ojson reports = ojson::array();
    std::error_code ec;
    if (!options.reports_dir.empty() && std::filesystem::is_directory(options.reports_dir, ec)) {
      std::vector<std::filesystem::path> files;
      for (const auto& entry : std::filesystem::directory_iterator(options.reports_dir, ec)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& file : files) {
        try {
          const EvalReport r = parse_report_json(read_text_file(file));
          reports.push_back({{"file", file.filename().string()},
                             {"method", r.method},
                             {"backend", r.backend},
                             {"n", r.n},
                             {"hit_at_1", r.hit_at_1},
                             {"hit_at_5", r.hit_at_5},
                             {"failures", r.failures}});
        } catch (const Error&) {
          // Not a report; skip it.
        }
      }
    }
    send_json(res, 200, ojson{{"reports", std::move(reports)}});
  });
}

void MatchService::Impl::handle_match(const httplib::Request& req, httplib::Response& res) {
  ojson body;
  try {
    body = ojson::parse(req.body);
  } catch (const nlohmann::json::exception&) {
    send_error(res, 400, "request body is not valid JSON");
    return;
  }
  const auto ctx = current();
  MatchConfig config;
  std::optional<ColumnQuery> query;
  try {
    const std::string method = body.contains("method") ? string_field(body, "method") : "baseline";
    const auto parsed = parse_method(method);
    if (!parsed) throw InvalidInput("unknown method '" + method + "'");
    config.method = *parsed;
    config.k = int_field(body, "k", 5);
    config.k1 = int_field(body, "k1", std::max(10, config.k));
    config.shots = int_field(body, "shots", 0);
    query = lookup(string_field(body, "table"), string_field(body, "column"));
  } catch (const InvalidInput& e) {
    send_error(res, 400, e.what());
    return;
  }
  if (!query) {
    send_error(res, 404, "unknown column '" + body.value("table", "") + "." +
                             body.value("column", "") + "'");
    return;
  }
  try {
    const MatchResult result = run_matcher(*query, *ctx, config);
    ojson candidates = ojson::array();
    for (const MatchCandidate& c : result.candidates) {
      const GlossaryItem& item = ctx->glossary->at(c.glossary_id);
      candidates.push_back({{"glossary_id", c.glossary_id},
                            {"label", item.label},
                            {"description", item.description},
                            {"rank", c.rank},
                            {"score", c.score},
                            {"score_kind", score_kind_name(c.score_kind)}});
    }
    send_json(res, 200, ojson{{"method", method_name(config.method)},
                               {"candidates", std::move(candidates)},
                               {"prompt_preview", result.prompt_preview}});
  } catch (const InvalidInput& e) {
    send_error(res, 400, e.what());
  } catch (const BackendUnavailable& e) {
    send_error(res, 502, e.what());
  } catch (const UnscriptedPrompt& e) {
    send_error(res, 502, e.what());
  }
}

void MatchService::Impl::handle_feedback_post(const httplib::Request& req,
                                              httplib::Response& res) {
  ojson body;
  std::string table, column, glossary_id;
  try {
    body = ojson::parse(req.body);
    table = string_field(body, "table");
    column = string_field(body, "column");
    glossary_id = string_field(body, "glossary_id");
  } catch (const nlohmann::json::exception&) {
    send_error(res, 400, "request body is not valid JSON");
    return;
  } catch (const InvalidInput& e) {
    send_error(res, 400, e.what());
    return;
  }
  const auto query = lookup(table, column);
  if (!query) {
    send_error(res, 422, "unknown column '" + table + "." + column + "'");
    return;
  }

  std::lock_guard writer(append_mu);
  const auto ctx = current();
  if (!ctx->glossary->contains(glossary_id)) {
    send_error(res, 422, "unknown glossary id '" + glossary_id + "'");
    return;
  }
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  FeedbackEntry entry{*query, glossary_id, now};
  const ojson entry_json = ojson::parse(format_feedback_line(entry));
  if (ctx->bank->contains(entry.query, entry.glossary_id)) {
    send_json(res, 200, ojson{{"duplicate", true}, {"count", ctx->bank->size()},
                              {"entry", entry_json}});
    return;
  }
  try {
    if (store) store->append(entry, *ctx->glossary);
  } catch (const Error& e) {
    send_error(res, 500, e.what());
    return;
  }
  auto bank = std::make_shared<FeedbackBank>(*ctx->bank);
  bank->add(entry);
  publish(std::make_shared<const MatcherContext>(with_feedback(*ctx, std::move(bank))));
  send_json(res, 201, ojson{{"duplicate", false}, {"count", current()->bank->size()},
                            {"entry", entry_json}});
}

MatchService::MatchService(MatcherContext ctx, std::vector<TableSchema> tables,
                           std::shared_ptr<FeedbackStore> store, ServiceOptions options)
    : impl_(std::make_unique<Impl>()) {
  if (!ctx.bank) ctx = with_feedback(ctx, nullptr);
  impl_->options = std::move(options);
  impl_->tables = std::move(tables);
  impl_->store = std::move(store);
  impl_->snapshot = std::make_shared<const MatcherContext>(std::move(ctx));
  impl_->routes();
}

MatchService::~MatchService() { stop(); }

int MatchService::bind() {
  if (impl_->bound_port >= 0) return impl_->bound_port;
  const std::string& host = impl_->options.host;
  if (impl_->options.port == 0) {
    impl_->bound_port = impl_->server.bind_to_any_port(host);
  } else if (impl_->server.bind_to_port(host, impl_->options.port)) {
    impl_->bound_port = impl_->options.port;
  }
  if (impl_->bound_port <= 0) {
    impl_->bound_port = -1;
    throw Error("cannot bind " + host + ":" + std::to_string(impl_->options.port));
  }
  return impl_->bound_port;
}

void MatchService::listen() {
  bind();
  if (!impl_->server.listen_after_bind()) throw Error("server stopped with an error");
}

void MatchService::stop() {
  if (impl_) impl_->server.stop();
}

bool MatchService::is_running() const { return impl_->server.is_running(); }

std::size_t MatchService::feedback_count() const { return impl_->current()->bank->size(); }

}  // namespace gmatch
