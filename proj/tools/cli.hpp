// Copyright 2026 The wva-costlab Authors
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

#ifndef WVA_TOOLS_CLI_HPP
#define WVA_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wva::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInvalidArguments = 1,
    kExitIoFailure = 2,
    kExitVerificationFailure = 3,
};

/// Entry point of `wva-costlab`. `args` excludes the program name.
/// Artifacts without --out go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Parses a real number or a multiple of pi such as "pi/6", "-pi/4.5", "2pi/3".
double parse_angle(const std::string &text);

}  // namespace wva::cli

#endif
