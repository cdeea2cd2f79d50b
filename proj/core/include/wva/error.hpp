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

#ifndef WVA_ERROR_HPP
#define WVA_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace wva {

enum class ErrorKind {
    model_dimension,
    contract_violation,
    numerical_failure,
    step_too_large,
    unsupported_input,
    orthogonal_postselection,
    vanishing_postselection,
    infinite_preparation_cost,
    estimation_undefined,
    degenerate_configuration,
    non_termination,
    out_of_domain,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` says which contract failed.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &what);

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace wva

#endif
