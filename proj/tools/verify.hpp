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

#ifndef WVA_TOOLS_VERIFY_HPP
#define WVA_TOOLS_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wva/cost.hpp"

namespace wva::cli {

struct VerifyOptions {
    std::uint64_t seed = 1;
    std::size_t theta_grid = 7;
    BoundForm bound = BoundForm::corrected;
};

struct SuiteResult {
    std::string name;
    bool pass = true;
    std::size_t checks = 0;
    std::size_t failures = 0;
    /// Smallest margin (allowed minus observed) over all checks; negative on failure.
    /// For eq11 this is the smallest tradeoff slack.
    double worst_slack = 0.0;
    std::vector<double> failing_thetas;  // eq11 only
};

/// Suite names in default run order.
const std::vector<std::string> &suite_names();

/// Runs one suite; throws contract_violation for an unknown name.
SuiteResult run_suite(const std::string &name, const VerifyOptions &options);

/// θ values of the tradeoff sweep: the seven standard angles for n = 7,
/// otherwise (k + 1)π/(4n) for k < n.
std::vector<double> theta_sweep(std::size_t n);

}  // namespace wva::cli

#endif
