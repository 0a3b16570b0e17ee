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

#ifndef GMATCH_KERNELS_HPP_
#define GMATCH_KERNELS_HPP_

// Data-parallel inner loops. Each OpenMP kernel has a *_serial twin with the
// same arithmetic order per output element, so results are bit-identical and
// the serial version serves as the test reference.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmatch/domain.hpp"

namespace gmatch::kernels {

// Rows below this count are scanned on one thread.
inline constexpr std::size_t kParallelRowThreshold = 2048;

/// out[i] = <row i of matrix, query>.
void dot_rows(std::span<const double> matrix, std::size_t dims,
              std::span<const double> query, std::span<double> out);
void dot_rows_serial(std::span<const double> matrix, std::size_t dims,
                     std::span<const double> query, std::span<double> out);

/// Best min(k, n) (id, score) pairs under ranks_before().
std::vector<ScoredId> select_top_k(std::span<const double> scores,
                                   std::span<const std::string> ids, std::size_t k);

/// The 3-grams hash_gram_counts() buckets for `text`, in emission order.
std::vector<std::string> grams_of(std::string_view text);

/// Raw (unnormalized) 3-gram bucket counts for each text, `dims` buckets.
void hash_gram_counts(std::span<const std::string> texts, std::size_t dims,
                      std::span<double> out);
void hash_gram_counts_serial(std::span<const std::string> texts, std::size_t dims,
                             std::span<double> out);

}  // namespace gmatch::kernels

#endif  // GMATCH_KERNELS_HPP_
