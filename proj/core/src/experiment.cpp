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

#include "wva/experiment.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace wva {

namespace {

constexpr std::uint64_t kMaxPreparations = 1'000'000'000ULL;
constexpr double kMinPostselection = 1e-12;

struct Scenario {
    ReferenceBasis basis = ReferenceBasis::sigma_y_eigenbasis();
    HermitianOperator meter = pauli_z();
    Ket phi_mi{1.0, 1.0};
};

const Scenario &scenario() {
    static const Scenario s;
    return s;
}

// Unit vector M|φ_mi>/sqrt(Ω), orthogonal to |φ_mi> at the balance point.
Ket minus_readout() {
    const Scenario &s = scenario();
    return Ket(s.meter.matrix().apply(s.phi_mi.amplitudes()));
}

struct OutcomeProbabilities {
    double p;      // postselection
    double minus;  // conditional on postselection
};

OutcomeProbabilities outcome_probabilities(const WvaSetup &setup, const Ket &minus) {
    try {
        const PostselectionResult r = postselect(setup);
        return {r.p, overlap_sq(minus, r.phi_mf)};
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::vanishing_postselection) {
            return {0.0, 0.0};
        }
        throw;
    }
}

void require_nondegenerate(double theta, double alpha) {
    const WvaSetup s = experiment_setup(theta, alpha, 0.0);
    const double signal = std::abs(inner(s.psi_sf().amplitudes(), s.a().matrix().apply(s.psi_si().amplitudes())));
    const double overlap = std::abs(inner(s.psi_sf(), s.psi_si()));
    if (signal < 1e-12 && overlap < 1e-12) {
        throw Error(ErrorKind::degenerate_configuration, "postselection orthogonal to both psi_si and A psi_si");
    }
}

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64 &gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

TrialCounts simulate_trial(double p, double q_minus, const Stopping &stopping, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    TrialCounts c;
    const auto prepare_one = [&] {
        ++c.n_prepared;
        if (uniform01(gen) < p) {
            ++c.n_postselected;
            if (uniform01(gen) < q_minus) {
                ++c.n_minus;
            } else {
                ++c.n_plus;
            }
        }
    };
    if (stopping.rule == StoppingRule::fixed_postselected) {
        if (p < kMinPostselection) {
            throw Error(ErrorKind::non_termination, "postselection probability too small to reach the target count");
        }
        while (c.n_postselected < stopping.count) {
            if (c.n_prepared >= kMaxPreparations) {
                throw Error(ErrorKind::non_termination, "preparation budget exhausted");
            }
            prepare_one();
        }
    } else {
        for (std::uint64_t k = 0; k < stopping.count; ++k) {
            prepare_one();
        }
    }
    return c;
}

}  // namespace

WvaSetup experiment_setup(double theta, double alpha, double g) {
    const Scenario &s = scenario();
    return WvaSetup(s.basis.real_superposition(theta), s.basis.real_superposition(alpha), s.phi_mi,
                    s.basis.sigma(), s.meter, g);
}

OutcomeModel outcome_model(double theta, double alpha) {
    require_nondegenerate(theta, alpha);
    return [setup = experiment_setup(theta, alpha, 0.0), minus = minus_readout()](double g) {
        const OutcomeProbabilities o = outcome_probabilities(setup.with_g(g), minus);
        const double p_minus = o.p * o.minus;
        return std::vector<double>{1.0 - o.p, o.p - p_minus, p_minus};
    };
}

OutcomeModel conditional_outcome_model(double theta, double alpha) {
    require_nondegenerate(theta, alpha);
    return [setup = experiment_setup(theta, alpha, 0.0), minus = minus_readout()](double g) {
        const OutcomeProbabilities o = outcome_probabilities(setup.with_g(g), minus);
        if (o.p == 0.0) {
            throw Error(ErrorKind::out_of_domain, "conditional model undefined where postselection vanishes");
        }
        return std::vector<double>{1.0 - o.minus, o.minus};
    };
}

void ExperimentConfig::validate() const {
    if (stopping.count < 1) {
        throw Error(ErrorKind::contract_violation, "stopping count must be at least 1");
    }
    if (n_reps < 1) {
        throw Error(ErrorKind::contract_violation, "need at least one repetition");
    }
    if (!(g_max > 0.0 && g_max <= std::numbers::pi / 2.0 - 1e-6)) {
        throw Error(ErrorKind::contract_violation, "g_max must lie in (0, pi/2 - 1e-6]");
    }
    if (!std::isfinite(theta) || !std::isfinite(alpha) || !std::isfinite(g_true)) {
        throw Error(ErrorKind::contract_violation, "angles must be finite");
    }
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
    return mix64(mix64(master_seed) ^ trial_index);
}

TrialCounts run_trial(const ExperimentConfig &config, std::uint64_t trial_index) {
    config.validate();
    require_nondegenerate(config.theta, config.alpha);
    const OutcomeProbabilities o =
        outcome_probabilities(experiment_setup(config.theta, config.alpha, config.g_true), minus_readout());
    return simulate_trial(o.p, o.minus, config.stopping, trial_seed(config.master_seed, trial_index));
}

// ---------------------------------------------------------------------------

ConditionalMle::ConditionalMle(double theta, double alpha, double g_max) : g_max_(g_max) {
    if (!(g_max > 0.0 && g_max <= std::numbers::pi / 2.0 - 1e-6)) {
        throw Error(ErrorKind::contract_violation, "g_max must lie in (0, pi/2 - 1e-6]");
    }
    const WvaSetup s = experiment_setup(theta, alpha, 0.0);
    signal_sq_ = std::norm(inner(s.psi_sf().amplitudes(), s.a().matrix().apply(s.psi_si().amplitudes())));
    overlap_sq_ = std::norm(inner(s.psi_sf(), s.psi_si()));
    if (signal_sq_ < 1e-24 || overlap_sq_ < 1e-24) {
        throw Error(ErrorKind::degenerate_configuration,
                    "P(minus | postselected) is not strictly increasing for this configuration");
    }
    // The closed form must reproduce the state-vector model it inverts.
    const OutcomeModel model = conditional_outcome_model(theta, alpha);
    for (double g : {0.25 * g_max, 0.5 * g_max, g_max}) {
        if (std::abs(model(g)[1] - minus_probability(g)) > 1e-9) {
            throw Error(ErrorKind::numerical_failure, "closed-form likelihood disagrees with the outcome model");
        }
    }
    q_max_ = minus_probability(g_max);
}

double ConditionalMle::minus_probability(double g) const {
    const double s2 = std::sin(g) * std::sin(g);
    const double c2 = std::cos(g) * std::cos(g);
    return s2 * signal_sq_ / (c2 * overlap_sq_ + s2 * signal_sq_);
}

double ConditionalMle::estimate(const TrialCounts &counts) const {
    if (counts.n_postselected == 0) {
        throw Error(ErrorKind::estimation_undefined, "no postselected samples");
    }
    if (counts.n_minus == 0) {
        return 0.0;
    }
    const double q = static_cast<double>(counts.n_minus) / static_cast<double>(counts.n_postselected);
    if (q >= q_max_) {
        return g_max_;
    }
    // q(g) inverts to tan²g = (|c-|²/|c+|²) q / (1 - q).
    return std::atan(std::sqrt(overlap_sq_ / signal_sq_ * q / (1.0 - q)));
}

double mle_g(const TrialCounts &counts, double theta, double alpha, double g_max) {
    return ConditionalMle(theta, alpha, g_max).estimate(counts);
}

// ---------------------------------------------------------------------------

namespace {

std::optional<double> slack_standard_error(double F, double p, double fm, double coherence, double reps,
                                           double total_prepared, BoundForm form) {
    if (reps < 2.0) {
        return std::nullopt;
    }
    const auto slack = [&](double pp, double ff) {
        return tradeoff_slack_clamped(F / (pp * ff), F / ff, coherence, form);
    };
    const double sd_fm = fm * std::sqrt(2.0 / (reps - 1.0));
    const double sd_p = std::sqrt(p * (1.0 - p) / total_prepared);
    const double hf = 1e-6 * fm;
    const double hp = 1e-6 * p;
    const double d_fm = (slack(p, fm + hf) - slack(p, fm - hf)) / (2.0 * hf);
    const double d_p = (slack(p + hp, fm) - slack(p - hp, fm)) / (2.0 * hp);
    return std::hypot(d_fm * sd_fm, d_p * sd_p);
}

}  // namespace

CampaignReport run_campaign(const ExperimentConfig &config, const CostRates &rates, unsigned workers,
                            BoundForm form) {
    config.validate();
    require_nondegenerate(config.theta, config.alpha);
    const WvaSetup setup = experiment_setup(config.theta, config.alpha, config.g_true);
    const OutcomeProbabilities o = outcome_probabilities(setup, minus_readout());
    const ConditionalMle mle(config.theta, config.alpha, config.g_max);

    CampaignReport report;
    report.config = config;
    report.seed_echo = config.master_seed;
    report.per_trial.resize(config.n_reps);

    const auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t k = begin; k < end; ++k) {
            const TrialCounts c = simulate_trial(o.p, o.minus, config.stopping, trial_seed(config.master_seed, k));
            report.per_trial[k] = {c, mle.estimate(c)};
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        run_range(0, config.n_reps);
    } else {
        std::vector<std::jthread> pool;
        const std::uint64_t chunk = (config.n_reps + workers - 1) / workers;
        for (std::uint64_t begin = 0; begin < config.n_reps; begin += chunk) {
            pool.emplace_back(run_range, begin, std::min(config.n_reps, begin + chunk));
        }
    }

    // Fixed-order reductions.
    const double reps = static_cast<double>(config.n_reps);
    double sum_g = 0.0, total_prepared = 0.0, total_post = 0.0;
    for (const auto &t : report.per_trial) {
        sum_g += t.g_est;
        total_prepared += static_cast<double>(t.counts.n_prepared);
        total_post += static_cast<double>(t.counts.n_postselected);
    }
    report.g_est_mean = sum_g / reps;
    if (config.n_reps >= 2) {
        double ss = 0.0;
        for (const auto &t : report.per_trial) {
            const double d = t.g_est - report.g_est_mean;
            ss += d * d;
        }
        report.g_est_var = ss / (reps - 1.0);
    }
    report.nu = config.stopping.rule == StoppingRule::fixed_postselected ? static_cast<double>(config.stopping.count)
                                                                          : total_post / reps;
    report.p_empirical = total_prepared > 0.0 ? total_post / total_prepared : 0.0;
    report.degenerate = report.g_est_var.has_value() && *report.g_est_var == 0.0;

    const double F = setup.conventional_qfi();
    report.coherence = l1_coherence(DensityMatrix::pure(setup.psi_si()), ReferenceBasis::sigma_y_eigenbasis());
    report.p_exact = o.p;
    report.fm_exact = fm_exact(setup);
    report.cost_exact = cost_point(F, report.p_exact * report.fm_exact, report.fm_exact, rates);
    report.slack_exact =
        tradeoff_slack_clamped(report.cost_exact.cp_norm, report.cost_exact.cm_norm, report.coherence, form);

    if (report.g_est_var && *report.g_est_var > 0.0 && report.nu > 0.0) {
        const double fm = 1.0 / (report.nu * *report.g_est_var);
        report.fm_empirical = fm;
        report.cost_empirical = cost_point(F, report.p_empirical * fm, fm, rates);
        report.slack_empirical =
            tradeoff_slack_clamped(report.cost_empirical->cp_norm, report.cost_empirical->cm_norm, report.coherence,
                                   form);
        report.slack_sigma =
            slack_standard_error(F, report.p_empirical, fm, report.coherence, reps, total_prepared, form);
    }
    return report;
}

WavePlateSettings hwp_settings(double theta, double alpha, double g) {
    constexpr double eighth = std::numbers::pi / 8.0;
    return {eighth, eighth - theta / 2.0, g / 2.0, -g / 2.0, eighth - alpha / 2.0};
}

}  // namespace wva
