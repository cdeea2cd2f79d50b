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

#ifndef WVA_POSTSELECT_HPP
#define WVA_POSTSELECT_HPP

// The weak-value-amplification channel: couple system and meter with
// U(g) = exp(-igA⊗M), project the system onto |ψ_sf>, keep the meter.

#include <optional>

#include "wva/fisher.hpp"
#include "wva/quantum.hpp"

namespace wva {

/// p below this is treated as exact orthogonality.
inline constexpr double kPostselectionFloor = 1e-14;

/// g·|A_w|·Ω at or above this is outside the weak regime.
inline constexpr double kWeakRegimeLimit = 0.1;

/// Pure pre/postselection pair, meter at the balance zero point <M> = 0.
class WvaSetup {
   public:
    WvaSetup(Ket psi_si, Ket psi_sf, Ket phi_mi, HermitianOperator a, HermitianOperator m, double g);

    const Ket &psi_si() const noexcept {
        return psi_si_;
    }
    const Ket &psi_sf() const noexcept {
        return psi_sf_;
    }
    const Ket &phi_mi() const noexcept {
        return phi_mi_;
    }
    const HermitianOperator &a() const noexcept {
        return a_;
    }
    const HermitianOperator &m() const noexcept {
        return m_;
    }
    double g() const noexcept {
        return g_;
    }
    /// Ω = <φ_mi|M²|φ_mi>
    double omega() const noexcept {
        return omega_;
    }
    /// F = 4<A²>Ω, the QFI of the full product state.
    double conventional_qfi() const;
    WvaSetup with_g(double g) const;
    WvaSetup with_postselection(Ket psi_sf) const;

   private:
    Ket psi_si_;
    Ket psi_sf_;
    Ket phi_mi_;
    HermitianOperator a_;
    HermitianOperator m_;
    double g_;
    double omega_;
};

struct PostselectionResult {
    double p;
    Ket phi_mf;
    std::optional<Complex> a_w;  // absent when <ψ_sf|ψ_si> ≈ 0
};

/// A_w = <ψ_sf|A|ψ_si> / <ψ_sf|ψ_si>.
Complex weak_value(const Ket &psi_si, const Ket &psi_sf, const HermitianOperator &a);

/// Exact: p = ||<ψ_sf|U(g)|ψ_si>|φ_mi>||², |φ_mf> = that vector / sqrt(p).
PostselectionResult postselect(const WvaSetup &setup);

/// QFI of the collapsed meter family g' -> |φ_mf(g')>.
double fm_exact(const WvaSetup &setup, double step = kDefaultStep);

/// 4Ω|A_w|²
double fm_leading(double omega, Complex a_w);

struct ProbabilisticQfi {
    double exact;    // p · F_m
    double leading;  // 4Ω|<ψ_sf|A|ψ_si>|²
};

ProbabilisticQfi probabilistic_qfi(const WvaSetup &setup, double step = kDefaultStep);

/// A|ψ_si> / sqrt(<A²>).
Ket optimal_postselection(const Ket &psi_si, const HermitianOperator &a);

/// Postselection with |<ψ_si|result>| = epsilon in the real span of
/// {ψ_si, Aψ_si}, on the side with the larger |A_w|. 0 < epsilon <= 0.2.
Ket near_orthogonal_postselection(const Ket &psi_si, const HermitianOperator &a, double epsilon);

/// g·|A_w|·Ω < kWeakRegimeLimit. False when A_w is undefined.
bool in_weak_regime(const WvaSetup &setup);

// ---------------------------------------------------------------------------
// Mixed (e.g. incoherent) system inputs.

class MixedWvaSetup {
   public:
    MixedWvaSetup(DensityMatrix rho_si, Ket psi_sf, Ket phi_mi, HermitianOperator a, HermitianOperator m,
                  double g);

    const DensityMatrix &rho_si() const noexcept {
        return rho_si_;
    }
    const Ket &psi_sf() const noexcept {
        return psi_sf_;
    }
    const Ket &phi_mi() const noexcept {
        return phi_mi_;
    }
    const HermitianOperator &a() const noexcept {
        return a_;
    }
    const HermitianOperator &m() const noexcept {
        return m_;
    }
    double g() const noexcept {
        return g_;
    }
    double omega() const noexcept {
        return omega_;
    }
    MixedWvaSetup with_g(double g) const;

   private:
    DensityMatrix rho_si_;
    Ket psi_sf_;
    Ket phi_mi_;
    HermitianOperator a_;
    HermitianOperator m_;
    double g_;
    double omega_;
};

struct MixedPostselectionResult {
    double p;
    DensityMatrix rho_mf;
};

/// Each eigen-branch of ρ_si is postselected and weighted by its branch
/// probability; the meter state is the normalized mixture.
MixedPostselectionResult postselect_mixed(const MixedWvaSetup &setup);

/// Purification Σ_k sqrt(λ_k)|k_a> ⊗ <ψ_sf|U(g)|k>|φ_mi> / sqrt(p) of the
/// postselected meter, ancilla-major. Tracing the ancilla gives rho_mf.
Ket purified_postselected_state(const MixedWvaSetup &setup);

/// qfi_mixed of g' -> rho_mf(g').
double fm_mixed_exact(const MixedWvaSetup &setup, double step = kDefaultStep);

}  // namespace wva

#endif
