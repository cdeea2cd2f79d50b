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

#ifndef WVA_EXPERIMENT_HPP
#define WVA_EXPERIMENT_HPP

// Photon-counting simulation of the polarization/spatial-mode experiment.
//
// System: polarization, σ = standard σ_y with eigenbasis (|H> ± i|V>)/√2,
// prepared as cos θ|0~> + sin θ|1~> and postselected on cos α|0~> + sin α|1~>.
// Meter: spatial mode, M = σ_z, |φ_mi> = (|↑> + |↓>)/√2. Each prepared photon
// is discarded (D1) or postselected; postselected photons are read out in the
// {|φ_mi>, M|φ_mi>} basis as "plus" (D2) or "minus" (D3).

#include <cstdint>
#include <optional>
#include <vector>

#include "wva/cost.hpp"
#include "wva/fisher.hpp"
#include "wva/postselect.hpp"

namespace wva {

/// Postselection setup for the photon experiment at coupling g.
WvaSetup experiment_setup(double theta, double alpha, double g);

/// g -> (fail, plus, minus).
OutcomeModel outcome_model(double theta, double alpha);

/// g -> (plus, minus) conditional on postselection.
OutcomeModel conditional_outcome_model(double theta, double alpha);

enum class StoppingRule { fixed_postselected, fixed_prepared };

struct Stopping {
    StoppingRule rule = StoppingRule::fixed_postselected;
    std::uint64_t count = 700;

    static Stopping postselected(std::uint64_t nu) {
        return {StoppingRule::fixed_postselected, nu};
    }
    static Stopping prepared(std::uint64_t n) {
        return {StoppingRule::fixed_prepared, n};
    }
};

struct ExperimentConfig {
    double theta = 0.0;
    double alpha = 0.0;
    double g_true = 0.0;
    Stopping stopping;
    std::uint64_t n_reps = 1000;
    std::uint64_t master_seed = 1;
    double g_max = 0.7853981633974483;  // π/4

    /// Throws contract_violation on out-of-range fields.
    void validate() const;
};

struct TrialCounts {
    std::uint64_t n_prepared = 0;
    std::uint64_t n_postselected = 0;
    std::uint64_t n_plus = 0;
    std::uint64_t n_minus = 0;

    bool operator==(const TrialCounts &) const = default;
};

/// Per-trial generator seed: splitmix64-style finalizer of both inputs.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

TrialCounts run_trial(const ExperimentConfig &config, std::uint64_t trial_index);

/// Maximum-likelihood g from the conditional plus/minus counts.
///
/// P(minus | postselected) = sin²g |c+|² / (cos²g |c-|² + sin²g |c+|²) with
/// c+ = <ψ_sf|σ|ψ_si>, c- = <ψ_sf|ψ_si> is strictly increasing on [0, g_max],
/// so the likelihood maximizer is its inverse at q̂ = n_minus / n_postselected.
class ConditionalMle {
   public:
    ConditionalMle(double theta, double alpha, double g_max);

    double estimate(const TrialCounts &counts) const;
    /// P(minus | postselected) at g.
    double minus_probability(double g) const;
    double g_max() const noexcept {
        return g_max_;
    }

   private:
    double g_max_;
    double signal_sq_;   // |c+|²
    double overlap_sq_;  // |c-|²
    double q_max_;
};

double mle_g(const TrialCounts &counts, double theta, double alpha, double g_max);

struct TrialRecord {
    TrialCounts counts;
    double g_est;
};

struct CampaignReport {
    ExperimentConfig config;
    double nu = 0.0;  // postselected samples per trial (mean under fixed_prepared)
    double g_est_mean = 0.0;
    std::optional<double> g_est_var;     // unbiased; absent for a single trial
    std::optional<double> fm_empirical;  // 1 / (ν var); absent when var is absent or 0
    bool degenerate = false;             // var == 0 (estimates pinned at a boundary)
    double p_empirical = 0.0;
    double fm_exact = 0.0;
    double p_exact = 0.0;
    std::optional<CostPoint> cost_empirical;
    CostPoint cost_exact;
    std::optional<double> slack_empirical;
    std::optional<double> slack_sigma;  // delta-method standard error of slack_empirical
    double slack_exact = 0.0;
    double coherence = 0.0;
    std::vector<TrialRecord> per_trial;
    std::uint64_t seed_echo = 0;
};

/// Runs n_reps independent trials. `workers` > 1 splits trial indices across
/// threads; the report is identical for any worker count. `form` selects the
/// bound used for the slack fields.
CampaignReport run_campaign(const ExperimentConfig &config, const CostRates &rates = CostRates(1.0, 1.0, 1),
                            unsigned workers = 1, BoundForm form = BoundForm::corrected);

struct WavePlateSettings {
    double meter_hwp;
    double hwp1;
    double hwp2;
    double hwp3;
    double hwp4;
};

/// Half-wave-plate angles (radians) realizing (θ, α, g). Documentation only;
/// the hwp4 convention mirrors hwp1.
WavePlateSettings hwp_settings(double theta, double alpha, double g);

}  // namespace wva

#endif
