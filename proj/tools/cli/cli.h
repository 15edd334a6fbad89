// Copyright 2026 The qcomb Authors
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

#ifndef QCOMB_CLI_CLI_H
#define QCOMB_CLI_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace qcomb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line (without the program name). Results go to `out` as
/// JSON (or CSV with --csv), diagnostics to `err`. Returns the exit code.
int run(std::vector<std::string> args, std::ostream &out, std::ostream &err);

}  // namespace qcomb::cli

#endif
