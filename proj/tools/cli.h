// Copyright 2026 The ceaudit Authors
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

#ifndef CEAUDIT_TOOLS_CLI_H_
#define CEAUDIT_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace ceaudit::cli {

// Process exit codes. Verdict codes come first so shell pipelines can branch
// on them directly.
inline constexpr int kExitOk = 0;           // compatible / equilibrium / valid
inline constexpr int kExitExploitable = 1;  // exploitable / invalid certificate
inline constexpr int kExitInputError = 2;
inline constexpr int kExitOracleDisagreement = 3;

// Runs `ceaudit` with `args` (args[0] is the program name). Documents go to
// `out` unless --out is given; diagnostics go to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ceaudit::cli

#endif  // CEAUDIT_TOOLS_CLI_H_
