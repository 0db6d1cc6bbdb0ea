// Copyright 2026 The Squash Authors
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

#ifndef SQUASH_CLI_COMMANDS_H
#define SQUASH_CLI_COMMANDS_H

#include <iosfwd>

namespace squash::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPropertyFailure = 1;
inline constexpr int kExitUsage = 2;

/// Entry point of the `squash` tool. CSV goes to `out` unless a subcommand
/// is given an output path; summaries and diagnostics go to `err`.
///
/// Subcommands: verify-theorem1, fig3, fig4, bounds, montecarlo, passive.
/// `--config FILE` reads `key = value` lines with one `[subcommand]` section
/// per subcommand; flags given on the command line take precedence.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace squash::cli

#endif
