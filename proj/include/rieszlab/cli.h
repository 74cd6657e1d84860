// Copyright 2026 The rieszlab Authors
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


#ifndef RIESZLAB_CLI_H_
#define RIESZLAB_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace rieszlab {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitConfigError = 2 };

// rieszlab <subcommand> [--config PATH] [--out DIR] [--seed N] [--threads N]
//                       [--tolerance-scale F]
//
// Writes <out>/<subcommand>.json and, for tabular results,
// <out>/<subcommand>.csv. Mathematical verdicts such as a divergent Hardy
// factor are reported and exit 0.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rieszlab

#endif  // RIESZLAB_CLI_H_
