// Copyright 2026 The pairgraph Authors
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

#ifndef PAIRGRAPH_CLI_H
#define PAIRGRAPH_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace pairgraph {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    /// Unrealizable or infeasible target, failed verify.
    kExitRejected = 1,
    /// Bad arguments or malformed input.
    kExitUsage = 2,
    /// Internal self-check failed.
    kExitInternal = 3,
};

/// Runs the tool. `args` excludes the program name. Reads graph documents
/// from `in` when no file (or "-") is given.
int cli_main(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace pairgraph

#endif
