// Copyright 2026 The locc-detect Authors
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

#ifndef LOCC_CLI_H
#define LOCC_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace locc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` (or the --out file), one-line diagnostics to `err`. Returns the exit code.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace locc

#endif
