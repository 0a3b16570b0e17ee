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

#ifndef GMATCH_EMBEDDING_HPP_
#define GMATCH_EMBEDDING_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmatch/domain.hpp"

namespace gmatch {

/// A unit-length, finite real vector.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;

  /// Scales `values` to unit L2 norm. Throws InvalidInput for an all-zero or
  /// non-finite input.
  static EmbeddingVector normalized(std::vector<double> values);

  /// Accepts `values` as-is if its norm is 1 within 1e-9; throws otherwise.
  static EmbeddingVector from_unit(std::vector<double> values);

  std::size_t dims() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  explicit EmbeddingVector(std::vector<double> values)
      : values_(std::move(values)) {}

  std::vector<double> values_;
};

/// Dot product of two unit vectors. Throws InvalidInput on a dims mismatch.
double cosine_similarity(const EmbeddingVector& u, const EmbeddingVector& v);

/// Sentence-embedding backend. Implementations must be safe to call from
/// several threads at once.
class Embedder {
 public:
  virtual ~Embedder() = default;

  /// Throws InvalidInput for text that is empty after trimming.
  EmbeddingVector embed(std::string_view text) const;

  /// Results are in input order.
  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const;

  /// 0 when not yet known (remote backends learn it from the first reply).
  virtual std::size_t dims() const = 0;

  /// Short tag used in evaluation reports.
  virtual std::string name() const = 0;

 protected:
  virtual std::vector<EmbeddingVector> do_embed_batch(
      std::span<const std::string> texts) const = 0;
};

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

/// Lowercased alphanumeric tokens, each expanded into character 3-grams
/// (tokens shorter than three characters are emitted whole). Bytes >= 0x80
/// count as token characters so UTF-8 words stay intact.
std::vector<std::string> hashing_grams(std::string_view text);

/// Built-in embedder: 3-gram counts bucketed by FNV-1a into 256 dims, then
/// L2-normalized. Pure and deterministic; needs no model server.
class HashingEmbedder final : public Embedder {
 public:
  static constexpr std::size_t kDims = 256;

  std::size_t dims() const override { return kDims; }
  std::string name() const override { return "builtin"; }

 protected:
  std::vector<EmbeddingVector> do_embed_batch(
      std::span<const std::string> texts) const override;
};

/// Exact cosine index: one unit vector per id, row-major. Immutable.
class CosineIndex {
 public:
  CosineIndex() = default;

  /// Throws InvalidInput on duplicate ids, count mismatch or mixed dims.
  static CosineIndex from_vectors(std::vector<std::string> ids,
                                  std::span<const EmbeddingVector> vectors);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  std::size_t dims() const { return dims_; }
  std::span<const std::string> ids() const { return ids_; }
  std::span<const double> matrix() const { return matrix_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(matrix_).subspan(i * dims_, dims_);
  }

  friend bool operator==(const CosineIndex&, const CosineIndex&) = default;

 private:
  std::vector<std::string> ids_;
  std::size_t dims_ = 0;
  std::vector<double> matrix_;
};

struct IndexItem {
  std::string id;
  std::string text;
};

/// Embeds every item's text and indexes the vectors in input order.
CosineIndex build_index(std::span<const IndexItem> items, const Embedder& embedder);

/// Exact top-min(k, size) by cosine, descending, ties by ascending id. Scores
/// every row; the scan is OpenMP-parallel for large indexes.
std::vector<ScoredId> knn(const CosineIndex& index, const EmbeddingVector& query,
                          std::size_t k);

/// Same contract as knn() but always single-threaded.
std::vector<ScoredId> knn_serial(const CosineIndex& index,
                                 const EmbeddingVector& query, std::size_t k);

/// One knn() per query, parallel across queries.
std::vector<std::vector<ScoredId>> knn_batch(const CosineIndex& index,
                                             std::span<const EmbeddingVector> queries,
                                             std::size_t k);

}  // namespace gmatch

#endif  // GMATCH_EMBEDDING_HPP_
