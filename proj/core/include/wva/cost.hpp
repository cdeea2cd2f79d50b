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

#ifndef WVA_COST_HPP
#define WVA_COST_HPP

// Preparation/measurement cost accounting for postselected estimation and the
// coherence-bounded tradeoff between the two.
//
// Costs are normalized by the conventional scheme: cp_norm = C_p / (R_p N),
// cm_norm = C_m / (R_m N). The tradeoff relation reads
//
//   |2 acos(sqrt(1/cp_norm)) - 2 acos(sqrt(cm_norm/cp_norm))| <= RHS(C_l1)
//
// with RHS = 2 acos(sqrt(1 - C_l1²)). BoundForm::printed is the compatibility
// variant 2 acos(sqrt(1 - C_l1)); it is looser than the geometric bound and
// never saturates for 0 < C_l1 < 1.

#include <cstdint>
#include <span>
#include <vector>

#include "wva/quantum.hpp"

namespace wva {

class CostRates {
   public:
    CostRates(double r_p, double r_m, std::uint64_t n_samples);

    double r_p() const noexcept {
        return r_p_;
    }
    double r_m() const noexcept {
        return r_m_;
    }
    std::uint64_t n_samples() const noexcept {
        return n_;
    }

   private:
    double r_p_;
    double r_m_;
    std::uint64_t n_;
};

struct CostPoint {
    double cp_norm = 1.0;
    double cm_norm = 1.0;
    double cp_raw = 0.0;
    double cm_raw = 0.0;
    double n_wva = 0.0;
};

struct TradeoffSample {
    double alpha;
    CostPoint cost;
    double slack;
};

enum class BoundForm { corrected, printed };

enum class Region { advantage, trivial };

/// Σ_{i≠j} |ρ_ij| in the reference basis.
double l1_coherence(const DensityMatrix &rho, const ReferenceBasis &basis);

/// C_p = (F/f_m) R_p N, C_m = (F/F_m) R_m N.
CostPoint cost_point(double F, double fm, double Fm, const CostRates &rates);

/// Leading-order costs from the Bloch vectors of |ψ_sf> (r1), A|ψ_si> (r2)
/// and |ψ_si> (r3).
CostPoint cost_point_geometric(const BlochVector &r1, const BlochVector &r2, const BlochVector &r3,
                               const CostRates &rates);

double tradeoff_rhs(double coherence, BoundForm form = BoundForm::corrected);
double tradeoff_lhs(double cp_norm, double cm_norm);

/// RHS - LHS in radians. Requires cp_norm >= 1, 0 <= cm_norm/cp_norm <= 1,
/// 0 <= coherence <= 1 and raw costs consistent with `rates`.
double tradeoff_slack(const CostPoint &point, double coherence, const CostRates &rates,
                      BoundForm form = BoundForm::corrected);

/// Same quantity without preconditions; sqrt/acos arguments are clamped.
/// Used for statistically noisy points that may stray outside the physical domain.
double tradeoff_slack_clamped(double cp_norm, double cm_norm, double coherence,
                              BoundForm form = BoundForm::corrected);

/// True where the three Bloch vectors of the real-superposition scenario are
/// ordered so that the triangle inequality is tight.
bool on_saturating_branch(double theta, double alpha);

/// n points over [-π/2, π/2] plus the anchors α = -θ (cp = 1) and
/// α = θ - π/2 (cm = 0), sorted, with |cos(α+θ)| < 1e-3 removed.
std::vector<double> default_alpha_grid(double theta, std::size_t n = 721);

/// Lower envelope of leading-order cost points for ψ_si = cos θ|0~> + sin θ|1~>
/// over postselections cos α|0~> + sin α|1~>, sorted by cp_norm.
std::vector<TradeoffSample> boundary_curve(double theta, std::span<const double> alpha_grid,
                                           const CostRates &rates, BoundForm form = BoundForm::corrected);

/// advantage iff cm_norm < 1 - tolerance.
Region classify_region(const CostPoint &point, double tolerance = 0.0);

}  // namespace wva

#endif
