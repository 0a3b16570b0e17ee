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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "gmatch/embedding.hpp"
#include "gmatch/kernels.hpp"

namespace {

gmatch::CosineIndex random_index(std::size_t n, std::size_t dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<std::string> ids;
  std::vector<gmatch::EmbeddingVector> vectors;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dims);
    for (double& x : v) x = dist(rng);
    ids.push_back("id" + std::to_string(i));
    vectors.push_back(gmatch::EmbeddingVector::normalized(std::move(v)));
  }
  return gmatch::CosineIndex::from_vectors(std::move(ids), vectors);
}

gmatch::EmbeddingVector random_query(std::size_t dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(dims);
  for (double& x : v) x = dist(rng);
  return gmatch::EmbeddingVector::normalized(std::move(v));
}

void BM_KnnSerial(benchmark::State& state) {
  const auto index = random_index(static_cast<std::size_t>(state.range(0)), 256, 1);
  const auto query = random_query(256, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gmatch::knn_serial(index, query, 5));
}

void BM_KnnParallel(benchmark::State& state) {
  const auto index = random_index(static_cast<std::size_t>(state.range(0)), 256, 1);
  const auto query = random_query(256, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gmatch::knn(index, query, 5));
}

std::vector<std::string> sample_texts(std::size_t n) {
  std::vector<std::string> texts;
  texts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    texts.push_back("customer_orders | order_total_" + std::to_string(i) +
                    " | order_id, customer_id, created_at");
  }
  return texts;
}

void BM_HashSerial(benchmark::State& state) {
  const auto texts = sample_texts(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(texts.size() * 256);
  for (auto _ : state) {
    gmatch::kernels::hash_gram_counts_serial(texts, 256, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_HashParallel(benchmark::State& state) {
  const auto texts = sample_texts(static_cast<std::size_t>(state.range(0)));
  std::vector<double> out(texts.size() * 256);
  for (auto _ : state) {
    gmatch::kernels::hash_gram_counts(texts, 256, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_KnnSerial)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(BM_KnnParallel)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(BM_HashSerial)->Arg(64)->Arg(1024);
BENCHMARK(BM_HashParallel)->Arg(64)->Arg(1024);

BENCHMARK_MAIN();
