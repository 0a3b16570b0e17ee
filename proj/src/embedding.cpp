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

#include "gmatch/embedding.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_set>

#include "gmatch/errors.hpp"
#include "gmatch/kernels.hpp"

namespace gmatch {

namespace {
constexpr double kUnitTolerance = 1e-9;
}  // namespace

EmbeddingVector EmbeddingVector::normalized(std::vector<double> values) {
  double sq = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("embedding has a non-finite value");
    sq += v * v;
  }
  if (values.empty() || sq == 0.0) {
    throw InvalidInput("cannot normalize an all-zero embedding");
  }
  const double norm = std::sqrt(sq);
  for (double& v : values) v /= norm;
  return EmbeddingVector(std::move(values));
}

EmbeddingVector EmbeddingVector::from_unit(std::vector<double> values) {
  double sq = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("embedding has a non-finite value");
    sq += v * v;
  }
  if (std::abs(std::sqrt(sq) - 1.0) > kUnitTolerance) {
    throw InvalidInput("embedding is not unit length");
  }
  return EmbeddingVector(std::move(values));
}

double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v) {
  if (u.dims() != v.dims()) {
    throw InvalidInput("embedding dims mismatch: " + std::to_string(u.dims()) +
                       " vs " + std::to_string(v.dims()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < u.dims(); ++i) acc += u[i] * v[i];
  return acc;
}

EmbeddingVector Embedder::embed(std::string_view text) const {
  std::string owned(text);
  auto out = embed_batch(std::span<const std::string>(&owned, 1));
  return std::move(out.front());
}

std::vector<EmbeddingVector> Embedder::embed_batch(
    std::span<const std::string> texts) const {
  for (const std::string& t : texts) {
    if (trim(t).empty()) throw InvalidInput("cannot embed empty text");
  }
  if (texts.empty()) return {};
  auto out = do_embed_batch(texts);
  if (out.size() != texts.size()) {
    throw BackendUnavailable("embedder returned " + std::to_string(out.size()) +
                             " vectors for " + std::to_string(texts.size()) +
                             " texts");
  }
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> hashing_grams(std::string_view text) {
  return kernels::grams_of(text);
}

std::vector<EmbeddingVector> HashingEmbedder::do_embed_batch(
    std::span<const std::string> texts) const {
  std::vector<double> counts(texts.size() * kDims);
  kernels::hash_gram_counts(texts, kDims, counts);
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t t = 0; t < texts.size(); ++t) {
    std::vector<double> row(counts.begin() + static_cast<std::ptrdiff_t>(t * kDims),
                            counts.begin() + static_cast<std::ptrdiff_t>((t + 1) * kDims));
    try {
      out.push_back(EmbeddingVector::normalized(std::move(row)));
    } catch (const InvalidInput&) {
      throw InvalidInput("text has no alphanumeric content: '" + texts[t] + "'");
    }
  }
  return out;
}

CosineIndex CosineIndex::from_vectors(std::vector<std::string> ids,
                                      std::span<const EmbeddingVector> vectors) {
  if (ids.size() != vectors.size()) {
    throw InvalidInput("index ids and vectors differ in length");
  }
  std::unordered_set<std::string_view> seen;
  for (const std::string& id : ids) {
    if (!seen.insert(id).second) {
      throw InvalidInput("duplicate index id '" + id + "'");
    }
  }
  CosineIndex index;
  index.dims_ = vectors.empty() ? 0 : vectors.front().dims();
  index.matrix_.reserve(vectors.size() * index.dims_);
  for (const EmbeddingVector& v : vectors) {
    if (v.dims() != index.dims_) throw InvalidInput("index vectors differ in dims");
    index.matrix_.insert(index.matrix_.end(), v.values().begin(), v.values().end());
  }
  index.ids_ = std::move(ids);
  return index;
}

CosineIndex build_index(std::span<const IndexItem> items, const Embedder& embedder) {
  std::vector<std::string> ids;
  std::vector<std::string> texts;
  ids.reserve(items.size());
  texts.reserve(items.size());
  std::unordered_set<std::string_view> seen;
  for (const IndexItem& item : items) {
    if (!seen.insert(item.id).second) {
      throw InvalidInput("duplicate index id '" + item.id + "'");
    }
    ids.push_back(item.id);
    texts.push_back(item.text);
  }
  auto vectors = embedder.embed_batch(texts);
  return CosineIndex::from_vectors(std::move(ids), vectors);
}

namespace {

template <typename ScoreFn>
std::vector<ScoredId> knn_with(const CosineIndex& index, const EmbeddingVector& query,
                               std::size_t k, ScoreFn&& score_rows) {
  if (k == 0) throw InvalidInput("k must be positive");
  if (index.empty()) return {};
  if (query.dims() != index.dims()) {
    throw InvalidInput("query dims " + std::to_string(query.dims()) +
                       " do not match index dims " + std::to_string(index.dims()));
  }
  std::vector<double> scores(index.size());
  score_rows(index.matrix(), index.dims(), query.values(), std::span<double>(scores));
  return kernels::select_top_k(scores, index.ids(), k);
}

}  // namespace

std::vector<ScoredId> knn(const CosineIndex& index, const EmbeddingVector& query,
                          std::size_t k) {
  return knn_with(index, query, k, kernels::dot_rows);
}

std::vector<ScoredId> knn_serial(const CosineIndex& index,
                                 const EmbeddingVector& query, std::size_t k) {
  return knn_with(index, query, k, kernels::dot_rows_serial);
}

std::vector<std::vector<ScoredId>> knn_batch(const CosineIndex& index,
                                             std::span<const EmbeddingVector> queries,
                                             std::size_t k) {
  if (k == 0) throw InvalidInput("k must be positive");
  for (const EmbeddingVector& q : queries) {
    if (!index.empty() && q.dims() != index.dims()) {
      throw InvalidInput("query dims do not match index dims");
    }
  }
  std::vector<std::vector<ScoredId>> out(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
  // Nested parallelism is off by default, so each knn_serial runs on the
  // thread that owns the query.
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t q = 0; q < n; ++q) {
    const auto i = static_cast<std::size_t>(q);
    out[i] = knn_serial(index, queries[i], k);
  }
  return out;
}

}  // namespace gmatch
