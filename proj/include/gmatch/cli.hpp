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

#ifndef GMATCH_CLI_HPP_
#define GMATCH_CLI_HPP_

#include <iosfwd>
#include <span>
#include <string>

namespace gmatch {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBackend = 2;

/// Entry point of the `gmatch` tool. `args` excludes the program name.
/// Subcommands: ingest, match, eval, gen-corpus, split, serve.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace gmatch

#endif  // GMATCH_CLI_HPP_
