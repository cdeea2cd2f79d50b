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

#include "wva/error.hpp"

namespace wva {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::model_dimension:
            return "model-dimension";
        case ErrorKind::contract_violation:
            return "contract-violation";
        case ErrorKind::numerical_failure:
            return "numerical-failure";
        case ErrorKind::step_too_large:
            return "step-too-large";
        case ErrorKind::unsupported_input:
            return "unsupported-input";
        case ErrorKind::orthogonal_postselection:
            return "orthogonal-postselection";
        case ErrorKind::vanishing_postselection:
            return "vanishing-postselection";
        case ErrorKind::infinite_preparation_cost:
            return "infinite-preparation-cost";
        case ErrorKind::estimation_undefined:
            return "estimation-undefined";
        case ErrorKind::degenerate_configuration:
            return "degenerate-configuration";
        case ErrorKind::non_termination:
            return "non-termination";
        case ErrorKind::out_of_domain:
            return "out-of-domain";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {
}

}  // namespace wva
