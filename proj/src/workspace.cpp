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

#include "gmatch/workspace.hpp"

#include <charconv>
#include <cmath>

#include "gmatch/errors.hpp"
#include "gmatch/ingest.hpp"
#include "gmatch/remote.hpp"

namespace gmatch {

namespace {

std::string required(const Settings& settings, std::string_view key) {
  auto v = settings.get(key);
  if (!v || v->empty()) throw InvalidInput("missing setting '" + std::string(key) + "'");
  return *v;
}

RemoteOptions remote_options(const Settings& settings) {
  RemoteOptions options;
  const auto in_flight = settings.get_int("llm.max_in_flight", 4);
  if (in_flight < 1) throw InvalidInput("llm.max_in_flight must be >= 1");
  options.max_in_flight = static_cast<std::size_t>(in_flight);
  return options;
}

}  // namespace

Workspace load_workspace(const Settings& settings, bool require_gold) {
  Workspace ws;
  ws.glossary = std::make_shared<const Glossary>(load_glossary(required(settings, "data.glossary")));
  ws.tables = load_tables(required(settings, "data.tables"));
  const auto gold = settings.get("data.gold");
  if (gold && !gold->empty()) {
    ws.gold = load_gold_mappings(*gold, *ws.glossary, ws.tables);
  } else if (require_gold) {
    throw InvalidInput("missing setting 'data.gold'");
  }
  return ws;
}

std::shared_ptr<const Embedder> make_embedder(const Settings& settings) {
  const std::string kind = settings.get_or("embedder.kind", "builtin");
  if (kind == "builtin") return std::make_shared<HashingEmbedder>();
  if (kind == "remote") {
    return std::make_shared<RemoteEmbedder>(required(settings, "embedder.url"),
                                            remote_options(settings));
  }
  throw InvalidInput("unknown embedder kind '" + kind + "'");
}

std::shared_ptr<LlmBackend> make_llm(const Settings& settings) {
  const std::string kind = settings.get_or("llm.kind", "scripted");
  const bool strict = settings.get_bool("llm.strict", false);
  if (kind == "scripted") {
    const auto script = settings.get("llm.script");
    if (!script || script->empty()) {
      return std::make_shared<ScriptedLlm>(std::vector<ScriptRule>{}, strict);
    }
    return std::make_shared<ScriptedLlm>(ScriptedLlm::from_file(*script, strict));
  }
  if (kind == "remote") {
    return std::make_shared<RemoteLlm>(required(settings, "llm.url"), remote_options(settings),
                                       settings.get_bool("llm.length_normalize", false));
  }
  throw InvalidInput("unknown llm kind '" + kind + "'");
}

ContextOptions context_options(const Settings& settings) {
  ContextOptions options;
  options.embed_label = settings.get_bool("embedder.embed_label", false);
  const std::string sim = settings.get_or("prompts.demo_similarity", "description");
  if (sim == "description") {
    options.demo_similarity = DemoSimilarity::kDescription;
  } else if (sim == "query") {
    options.demo_similarity = DemoSimilarity::kQuery;
  } else {
    throw InvalidInput("prompts.demo_similarity must be 'description' or 'query'");
  }
  if (auto dir = settings.get("prompts.templates"); dir && !dir->empty()) {
    options.templates = PromptTemplates::load(*dir);
  }
  return options;
}

SplitRatios parse_ratios(std::string_view text) {
  std::vector<double> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t sep = text.find_first_of(":,", pos);
    const std::string piece = trim(text.substr(pos, sep == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : sep - pos));
    double value = 0.0;
    const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), value);
    if (piece.empty() || res.ec != std::errc() || res.ptr != piece.data() + piece.size() ||
        !(value > 0.0) || !std::isfinite(value)) {
      throw InvalidInput("bad split ratio '" + piece + "' in '" + std::string(text) + "'");
    }
    parts.push_back(value);
    if (sep == std::string_view::npos) break;
    pos = sep + 1;
  }
  if (parts.size() != 3) throw InvalidInput("split ratios need three values: train:test:demo");
  const double sum = parts[0] + parts[1] + parts[2];
  return {parts[0] / sum, parts[1] / sum, parts[2] / sum};
}

}  // namespace gmatch
