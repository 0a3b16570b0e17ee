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

#include "gmatch/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "gmatch/embedding.hpp"

namespace gmatch::kernels {

namespace {

inline double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += a[j] * b[j];
  return acc;
}

inline bool is_token_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z') || c >= 0x80;
}

inline unsigned char to_lower(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<unsigned char>(c - 'A' + 'a') : c;
}

template <typename Fn>
void for_each_gram(std::string_view text, Fn&& fn) {
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    if (token.size() < 3) {
      fn(std::string_view(token));
    } else {
      for (std::size_t i = 0; i + 3 <= token.size(); ++i) {
        fn(std::string_view(token).substr(i, 3));
      }
    }
    token.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_token_byte(c)) {
      token.push_back(static_cast<char>(to_lower(c)));
    } else {
      flush();
    }
  }
  flush();
}

void count_one(std::string_view text, std::size_t dims, double* row) {
  std::fill(row, row + dims, 0.0);
  for_each_gram(text, [&](std::string_view gram) {
    row[fnv1a64(gram) % dims] += 1.0;
  });
}

}  // namespace

void dot_rows(std::span<const double> matrix, std::size_t dims,
              std::span<const double> query, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(out.size());
  const double* m = matrix.data();
  const double* q = query.data();
  double* o = out.data();
#pragma omp parallel for schedule(static) if (out.size() >= kParallelRowThreshold)
  for (std::int64_t i = 0; i < n; ++i) {
    o[i] = dot(m + static_cast<std::size_t>(i) * dims, q, dims);
  }
}

void dot_rows_serial(std::span<const double> matrix, std::size_t dims,
                     std::span<const double> query, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = dot(matrix.data() + i * dims, query.data(), dims);
  }
}

std::vector<ScoredId> select_top_k(std::span<const double> scores,
                                   std::span<const std::string> ids, std::size_t k) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t take = std::min(k, order.size());
  auto before = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take),
                    order.end(), before);
  std::vector<ScoredId> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.push_back({ids[order[i]], scores[order[i]]});
  }
  return out;
}

std::vector<std::string> grams_of(std::string_view text) {
  std::vector<std::string> out;
  for_each_gram(text, [&](std::string_view g) { out.emplace_back(g); });
  return out;
}

void hash_gram_counts(std::span<const std::string> texts, std::size_t dims,
                      std::span<double> out) {
  const auto n = static_cast<std::int64_t>(texts.size());
#pragma omp parallel for schedule(dynamic, 16) if (texts.size() >= 64)
  for (std::int64_t t = 0; t < n; ++t) {
    count_one(texts[static_cast<std::size_t>(t)], dims,
              out.data() + static_cast<std::size_t>(t) * dims);
  }
}

void hash_gram_counts_serial(std::span<const std::string> texts, std::size_t dims,
                             std::span<double> out) {
  for (std::size_t t = 0; t < texts.size(); ++t) {
    count_one(texts[t], dims, out.data() + t * dims);
  }
}

}  // namespace gmatch::kernels
