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

#ifndef GMATCH_SYNTACTIC_HPP_
#define GMATCH_SYNTACTIC_HPP_

#include <cstddef>
#include <string>
#include <string_view>

namespace gmatch {

enum class SyntacticMeasure { kEdit, kJaroWinkler };

/// UTF-8 to code points; a byte that does not start a valid sequence becomes
/// its own code point.
std::u32string decode_utf8(std::string_view s);

std::size_t levenshtein(std::u32string_view a, std::u32string_view b);

/// 1 - levenshtein / max length, over code points. Two empty strings give 1.
double edit_similarity(std::string_view a, std::string_view b);

double jaro(std::string_view a, std::string_view b);

/// Jaro plus the Winkler prefix bonus (scale 0.1, prefix capped at 4).
double jaro_winkler(std::string_view a, std::string_view b);

double syntactic_similarity(std::string_view a, std::string_view b, SyntacticMeasure measure);

}  // namespace gmatch

#endif  // GMATCH_SYNTACTIC_HPP_
