// Copyright 2026 The crashloc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CRASHLOC_CLI_H_
#define CRASHLOC_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace crashloc::cli {

// Process exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
// Unreadable or invalid input: bad path, schema, config.
inline constexpr int kExitInput = 2;
// Localization could not run (e.g. Category B without an app model).
inline constexpr int kExitLocate = 3;

// Runs `crashloc <subcommand> ...`. `args` excludes the program name. The
// result payload goes to `out`; diagnostics and error JSON go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace crashloc::cli

#endif  // CRASHLOC_CLI_H_
