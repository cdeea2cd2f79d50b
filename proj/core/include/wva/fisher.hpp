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

#ifndef WVA_FISHER_HPP
#define WVA_FISHER_HPP

// Quantum and classical Fisher information of one-parameter families.
// All derivatives are central finite differences (ψ(g+h) - ψ(g-h)) / 2h.

#include <functional>
#include <span>
#include <vector>

#include "wva/quantum.hpp"

namespace wva {

inline constexpr double kDefaultStep = 1e-5;

/// Rank cutoff on λ_i + λ_j in the SLD sums.
inline constexpr double kRankCutoff = 1e-10;

using PureFamily = std::function<Ket(double)>;
using MixedFamily = std::function<DensityMatrix(double)>;
using UnitaryFamily = std::function<UnitaryOperator(double)>;

/// Outcome probabilities as a function of g. Must sum to 1.
using OutcomeModel = std::function<std::vector<double>(double)>;

/// 4(<∂ψ|∂ψ> - |<ψ|∂ψ>|^2). ψ(g±h) are phase-aligned to ψ(g) before
/// differencing. Throws step_too_large when |<ψ(g)|ψ(g±h)>| < 0.9.
double qfi_pure(const PureFamily &family, double g, double step = kDefaultStep);

/// Closed form for U(g) = exp(-igA⊗M) acting on rho_s ⊗ |phi_m><phi_m|:
/// 4(<A²><M²> - <A>²<M>²) for pure rho_s,
/// 4<A²>Ω for mixed rho_s diagonal in the eigenbasis of A (requires <M> = 0).
/// Other mixed inputs are rejected with unsupported_input; use qfi_mixed.
double qfi_product_coupling(const DensityMatrix &rho_s, const Ket &phi_m, const HermitianOperator &a,
                            const HermitianOperator &m);

/// SLD quantum Fisher information Σ 2|<i|∂ρ|j>|² / (λ_i + λ_j).
double qfi_mixed(const MixedFamily &family, double g, double step = kDefaultStep);

/// Spectral formula for U(g) ρ U†(g) with ρ = Σ λ_i |ψ_i><ψ_i| held fixed:
///   Σ_i 4λ_i <ψ_i|∂U† ∂U|ψ_i> - Σ_ij 8λ_iλ_j/(λ_i+λ_j) |<ψ_i|U†∂U|ψ_j>|²
double qfi_spectral_unitary(std::span<const double> lambdas, std::span<const Ket> vectors,
                            const UnitaryFamily &u_family, double g, double step = kDefaultStep);

/// Σ_k (∂p_k)² / p_k. Outcomes below 1e-12 at all three probe points are skipped.
double cfi_discrete(const OutcomeModel &model, double g, double step = kDefaultStep);

}  // namespace wva

#endif
