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

#include "doctest.h"
#include "fixtures.hpp"
#include "gmatch/config.hpp"
#include "gmatch/csv.hpp"
#include "gmatch/errors.hpp"
#include "gmatch/workspace.hpp"

using namespace gmatch;

TEST_CASE("INI settings flatten to section.key") {
  testutil::TempDir dir;
  write_text_file(dir / "c.ini",
                  "; comment\n"
                  "[data]\n"
                  "glossary = g.csv\n"
                  "# another comment\n"
                  "tables = \"t.json\"\n"
                  "[eval]\n"
                  "seed = 42\n"
                  "jobs = many\n"
                  "[llm]\n"
                  "strict = yes\n");
  const Settings s = Settings::from_file(dir / "c.ini");
  CHECK(s.get("data.glossary") == "g.csv");
  CHECK(s.get("data.tables") == "t.json");
  CHECK(s.get_int("eval.seed", 0) == 42);
  CHECK(s.get_int("eval.missing", 7) == 7);
  CHECK_THROWS_AS(s.get_int("eval.jobs", 1), InvalidInput);
  CHECK(s.get_bool("llm.strict", false));
  CHECK(s.get_or("serve.port", "8080") == "8080");
  CHECK_FALSE(s.has("data.gold"));
}

TEST_CASE("malformed INI reports its line") {
  testutil::TempDir dir;
  write_text_file(dir / "bad.ini", "[data]\nglossary = a\n[broken\n");
  try {
    Settings::from_file(dir / "bad.ini");
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("ratio strings") {
  const SplitRatios r = parse_ratios("208:212:68");
  CHECK(r.train == doctest::Approx(208.0 / 488));
  CHECK(r.test == doctest::Approx(212.0 / 488));
  CHECK(r.demo == doctest::Approx(68.0 / 488));
  const SplitRatios c = parse_ratios("0.5, 0.3, 0.2");
  CHECK(c.test == doctest::Approx(0.3));
  CHECK_THROWS_AS(parse_ratios("1:2"), InvalidInput);
  CHECK_THROWS_AS(parse_ratios("1:0:2"), InvalidInput);
  CHECK_THROWS_AS(parse_ratios("a:b:c"), InvalidInput);
}

TEST_CASE("backend factories") {
  Settings s;
  CHECK(make_embedder(s)->name() == "builtin");
  CHECK(make_llm(s)->name() == "scripted");
  s.set("embedder.kind", "remote");
  CHECK_THROWS_AS(make_embedder(s), InvalidInput);
  s.set("embedder.url", "http://127.0.0.1:9");
  CHECK(make_embedder(s)->name() == "remote");
  s.set("llm.kind", "magic");
  CHECK_THROWS_AS(make_llm(s), InvalidInput);
  s.set("prompts.demo_similarity", "other");
  CHECK_THROWS_AS(context_options(s), InvalidInput);
}

TEST_CASE("workspace loading") {
  testutil::TempDir dir;
  write_text_file(dir / "g.csv", "id,label,description\ng1,A,alpha\n");
  write_text_file(dir / "t.json", R"([{"table":"T","columns":["X","Y"]}])");
  write_text_file(dir / "gold.csv", "table,column,glossary_id\nT,X,g1\nT,Y,\n");
  Settings s;
  CHECK_THROWS_AS(load_workspace(s), InvalidInput);
  s.set("data.glossary", (dir / "g.csv").string());
  s.set("data.tables", (dir / "t.json").string());
  CHECK(load_workspace(s).gold.empty());
  CHECK_THROWS_AS(load_workspace(s, true), InvalidInput);
  s.set("data.gold", (dir / "gold.csv").string());
  const Workspace ws = load_workspace(s, true);
  CHECK(ws.glossary->size() == 1);
  CHECK(ws.tables.size() == 1);
  CHECK(ws.gold.size() == 2);
}
