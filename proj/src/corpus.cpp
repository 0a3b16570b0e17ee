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

#include "gmatch/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <set>
#include <unordered_set>

#include "gmatch/embedding.hpp"
#include "gmatch/errors.hpp"
#include "gmatch/prompting.hpp"

namespace gmatch {

namespace {

struct Word {
  const char* text;
  const char* abbr;
};

struct Attribute {
  const char* text;
  const char* abbr;
  const char* gloss;
};

constexpr Word kQualifiers[] = {
    {"current", "CUR"},   {"previous", "PREV"}, {"original", "ORIG"}, {"effective", "EFF"},
    {"expected", "EXPD"}, {"average", "AVG"},   {"total", "TOT"},     {"minimum", "MIN"},
    {"maximum", "MAX"},   {"annual", "ANN"},    {"monthly", "MTH"},   {"daily", "DLY"},
    {"net", "NET"},       {"gross", "GRS"},     {"preferred", "PREF"}, {"legal", "LGL"},
    {"estimated", "EST"},
};

constexpr Word kEntities[] = {
    {"customer", "CUST"},     {"account", "ACCT"},     {"product", "PROD"},
    {"order", "ORD"},         {"invoice", "INV"},      {"payment", "PMT"},
    {"employee", "EMP"},      {"branch", "BRCH"},      {"contract", "CNTR"},
    {"policy", "POL"},        {"claim", "CLM"},        {"supplier", "SUPP"},
    {"shipment", "SHPMT"},    {"transaction", "TXN"},  {"loan", "LN"},
    {"deposit", "DEP"},       {"campaign", "CMPGN"},   {"household", "HH"},
    {"merchant", "MRCH"},     {"vehicle", "VEH"},      {"property", "PROP"},
    {"portfolio", "PORT"},    {"security", "SECY"},    {"card", "CRD"},
    {"channel", "CHNL"},      {"region", "RGN"},       {"segment", "SEG"},
    {"agreement", "AGRMT"},   {"beneficiary", "BNFCY"}, {"counterparty", "CPTY"},
};

constexpr Attribute kAttributes[] = {
    {"identifier", "ID", "that uniquely distinguishes one record from another"},
    {"name", "NM", "by which the record is commonly known"},
    {"balance", "BAL", "outstanding at the end of the reporting period"},
    {"amount", "AMT", "expressed in the reporting currency"},
    {"date", "DT", "on which the event took place"},
    {"status", "STS", "describing the lifecycle stage"},
    {"type", "TYP", "classifying the record into a business category"},
    {"code", "CD", "assigned from the enterprise reference list"},
    {"address", "ADDR", "used for correspondence and delivery"},
    {"rate", "RT", "applied when calculating charges or returns"},
    {"limit", "LMT", "beyond which approval is required"},
    {"score", "SCR", "produced by the risk assessment model"},
    {"count", "CNT", "of occurrences within the period"},
    {"currency", "CCY", "in which values are denominated"},
    {"category", "CTGY", "used for grouping in management reports"},
    {"description", "DESC", "in free text entered by staff"},
    {"telephone", "TEL", "used to reach the responsible party"},
    {"email", "EML", "used for electronic notifications"},
    {"country", "CTRY", "of registration or residence"},
    {"city", "CTY", "where the party is located"},
    {"postcode", "PSTCD", "of the registered location"},
    {"value", "VAL", "at market prices"},
    {"percentage", "PCT", "relative to the agreed baseline"},
    {"duration", "DUR", "measured in calendar days"},
    {"frequency", "FREQ", "at which the activity recurs"},
    {"priority", "PRTY", "used to order work queues"},
    {"rating", "RTG", "assigned by internal or external agencies"},
    {"owner", "OWNR", "accountable for the record"},
    {"term", "TRM", "agreed at origination"},
    {"fee", "FEE", "charged for the service"},
};

constexpr const char* kFillers[] = {
    "as held in the system of record",
    "maintained by the operations team",
    "used in regulatory and management reporting",
    "captured at the time of onboarding",
    "refreshed during the nightly batch",
    "validated against enterprise data standards",
    "shared with downstream analytics",
    "subject to audit and retention rules",
};

constexpr const char* kTableSuffixes[] = {"MASTER", "DETAIL", "HIST", "SNAP",
                                          "FACT",   "DIM",    "XREF", "STG"};

constexpr const char* kTechnicalColumns[] = {
    "ETL_BATCH_ID", "LOAD_TS",   "ROW_HASH",   "SRC_SYS_CD", "REC_VER_NO",
    "FILLER_1",     "UPD_USER",  "DEL_FLG",    "PART_KEY",   "CHKSUM",
    "INS_TS",       "JOB_RUN_NO", "AUDIT_SEQ", "MIG_FLAG",   "RSRV_FLD",
};

constexpr char kCrypticLetters[] = "bcdfghjkmnpqrstvwxz";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

std::string upper(std::string s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

std::string title(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

struct Concept {
  std::size_t qualifier;
  std::size_t entity;
  std::size_t attribute;

  auto operator<=>(const Concept&) const = default;
};

std::string column_name_for(const Concept& c, Rng& rng) {
  const Word& q = kQualifiers[c.qualifier];
  const Word& e = kEntities[c.entity];
  const Attribute& a = kAttributes[c.attribute];
  switch (rng.below(4)) {
    case 0: return std::string(e.abbr) + "_" + a.abbr;
    case 1: return upper(e.text) + "_" + upper(a.text);
    case 2: return std::string(q.abbr) + "_" + e.abbr + "_" + a.abbr;
    default: return upper(q.text) + "_" + upper(a.text);
  }
}

// An opaque code like "QZK_47" sharing no 3-gram with `avoid`.
std::string cryptic_name(Rng& rng, const std::string& avoid) {
  const auto grams = hashing_grams(avoid);
  const std::unordered_set<std::string> taken(grams.begin(), grams.end());
  for (;;) {
    std::string code;
    const std::size_t len = 3 + rng.below(2);
    for (std::size_t i = 0; i < len; ++i) {
      code.push_back(kCrypticLetters[rng.below(sizeof(kCrypticLetters) - 1)]);
    }
    char digits[8];
    std::snprintf(digits, sizeof(digits), "_%02zu", rng.below(100));
    std::string name = upper(code) + digits;
    bool clean = true;
    for (const std::string& g : hashing_grams(name)) {
      if (taken.count(g) != 0) {
        clean = false;
        break;
      }
    }
    if (clean) return name;
  }
}

std::string unique_in(std::string name, const std::set<std::string>& used) {
  if (used.count(name) == 0) return name;
  for (int suffix = 2;; ++suffix) {
    std::string candidate = name + "_" + std::to_string(suffix);
    if (used.count(candidate) == 0) return candidate;
  }
}

}  // namespace

Corpus generate_synthetic_corpus(const CorpusOptions& options) {
  constexpr std::size_t kNq = std::size(kQualifiers);
  constexpr std::size_t kNe = std::size(kEntities);
  constexpr std::size_t kNa = std::size(kAttributes);
  if (options.glossary_size == 0 || options.glossary_size > kNq * kNe * kNa) {
    throw InvalidInput("glossary size must be in 1.." + std::to_string(kNq * kNe * kNa));
  }
  if (options.glossary_size < options.columns_per_table) {
    throw InvalidInput("glossary size must be >= columns per table");
  }
  if (options.columns_per_table == 0) throw InvalidInput("columns per table must be >= 1");

  Rng rng(options.seed);
  std::vector<Concept> concepts;
  std::set<Concept> seen;
  while (concepts.size() < options.glossary_size) {
    Concept c{rng.below(kNq), rng.below(kNe), rng.below(kNa)};
    if (seen.insert(c).second) concepts.push_back(c);
  }

  std::vector<GlossaryItem> items;
  items.reserve(concepts.size());
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    const Concept& c = concepts[i];
    const std::string q = kQualifiers[c.qualifier].text;
    const std::string e = kEntities[c.entity].text;
    const Attribute& a = kAttributes[c.attribute];
    char id[32];
    std::snprintf(id, sizeof(id), "G%05zu", i + 1);
    items.push_back({id, title(q) + " " + title(e) + " " + title(a.text),
                     "The " + q + " " + a.text + " " + a.gloss + " for the " + e + ", " +
                         kFillers[rng.below(std::size(kFillers))] + "."});
  }

  Corpus corpus;
  for (std::size_t t = 0; t < options.tables; ++t) {
    char suffix[8];
    std::snprintf(suffix, sizeof(suffix), "_%02zu", t + 1);
    const std::string table =
        std::string(kEntities[rng.below(kNe)].abbr) + "_" +
        kTableSuffixes[rng.below(std::size(kTableSuffixes))] + suffix;

    std::set<std::string> used_names;
    std::set<std::size_t> used_items;
    std::vector<std::string> columns;
    std::vector<std::optional<std::string>> golds;
    for (std::size_t col = 0; col < options.columns_per_table; ++col) {
      if (rng.unit() < options.null_fraction) {
        std::string name = unique_in(
            kTechnicalColumns[rng.below(std::size(kTechnicalColumns))], used_names);
        used_names.insert(name);
        columns.push_back(std::move(name));
        golds.emplace_back(std::nullopt);
        continue;
      }
      std::size_t pick = rng.below(items.size());
      while (used_items.count(pick) != 0) pick = rng.below(items.size());
      used_items.insert(pick);
      std::string name = rng.unit() < options.cryptic_fraction
                             ? cryptic_name(rng, items[pick].description)
                             : column_name_for(concepts[pick], rng);
      name = unique_in(std::move(name), used_names);
      used_names.insert(name);
      columns.push_back(std::move(name));
      golds.emplace_back(items[pick].id);
    }
    for (std::size_t col = 0; col < columns.size(); ++col) {
      corpus.examples.push_back({make_query(table, columns, columns[col]), golds[col]});
    }
    corpus.tables.push_back({table, std::move(columns)});
  }
  corpus.glossary = Glossary(std::move(items));
  return corpus;
}

std::vector<ScriptRule> oracle_script(const Glossary& glossary,
                                      std::span<const LabeledExample> examples) {
  using Kind = ScriptRule::MatchKind;
  const std::string micl_head =
      fill_template(PromptTemplates::defaults().micl,
                    {{"query", "\x01"}, {"demonstrations", ""}});
  const std::string micl_prefix = micl_head.substr(0, micl_head.find('\x01'));
  const std::string micl_suffix = micl_head.substr(micl_head.find('\x01') + 1);

  std::vector<ScriptRule> rules;
  for (const LabeledExample& e : examples) {
    if (!e.gold_glossary_id) continue;
    const std::string canonical = canonical_query_text(e.query);
    const std::string& gold_description = glossary.at(*e.gold_glossary_id).description;
    rules.push_back({Kind::kContains, micl_prefix + canonical + micl_suffix, gold_description,
                     std::nullopt});
    rules.push_back({Kind::kContains,
                     "Column metadata: " + canonical + "\nGlossary description: " +
                         gold_description + "\n",
                     std::nullopt,
                     std::vector<OptionScore>{{std::string(kYes), -0.05}, {std::string(kNo), -3.0}}});
  }
  rules.push_back({Kind::kContains, "Answer Yes or No.", std::nullopt,
                   std::vector<OptionScore>{{std::string(kYes), -3.0}, {std::string(kNo), -0.05}}});
  rules.push_back({Kind::kContains, std::string(kNoneOfTheAbove), std::nullopt,
                   std::vector<OptionScore>{{"A", -0.1}}});
  return rules;
}

}  // namespace gmatch
