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

#include "wva/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace wva {

namespace {

constexpr double kDomainTol = 1e-9;
constexpr double kBucketWidth = 1e-3;
constexpr double kGridCosFloor = 1e-3;

double clamp01(double x) {
    return std::clamp(x, 0.0, 1.0);
}

CostPoint make_point(double cp_norm, double cm_norm, const CostRates &rates) {
    const double n = static_cast<double>(rates.n_samples());
    return {cp_norm, cm_norm, cp_norm * rates.r_p() * n, cm_norm * rates.r_m() * n, cp_norm * n};
}

}  // namespace

CostRates::CostRates(double r_p, double r_m, std::uint64_t n_samples) : r_p_(r_p), r_m_(r_m), n_(n_samples) {
    if (!(r_p > 0.0) || !(r_m > 0.0) || n_samples == 0) {
        throw Error(ErrorKind::contract_violation, "cost rates and sample count must be positive");
    }
}

double l1_coherence(const DensityMatrix &rho, const ReferenceBasis &basis) {
    const ComplexMatrix c = basis.coordinates(rho);
    return std::abs(c(0, 1)) + std::abs(c(1, 0));
}

CostPoint cost_point(double F, double fm, double Fm, const CostRates &rates) {
    if (!(fm > 0.0)) {
        throw Error(ErrorKind::infinite_preparation_cost, "postselection carries no information (f_m <= 0)");
    }
    if (!(F > 0.0) || !(Fm > 0.0)) {
        throw Error(ErrorKind::contract_violation, "F and F_m must be positive");
    }
    return make_point(F / fm, F / Fm, rates);
}

CostPoint cost_point_geometric(const BlochVector &r1, const BlochVector &r2, const BlochVector &r3,
                               const CostRates &rates) {
    const double c12 = std::cos(bloch_angle(r1, r2) / 2.0);
    const double c13 = std::cos(bloch_angle(r1, r3) / 2.0);
    const double p12 = c12 * c12;
    if (p12 < 1e-24) {
        throw Error(ErrorKind::infinite_preparation_cost, "postselection orthogonal to A|psi_si>");
    }
    const double cp = 1.0 / p12;
    return make_point(cp, cp * c13 * c13, rates);
}

double tradeoff_rhs(double coherence, BoundForm form) {
    const double c = clamp01(coherence);
    const double inside = form == BoundForm::corrected ? 1.0 - c * c : 1.0 - c;
    return 2.0 * std::acos(std::sqrt(clamp01(inside)));
}

double tradeoff_lhs(double cp_norm, double cm_norm) {
    const double prep = std::acos(std::sqrt(clamp01(1.0 / cp_norm)));
    const double meas = std::acos(std::sqrt(clamp01(cm_norm / cp_norm)));
    return std::abs(2.0 * prep - 2.0 * meas);
}

double tradeoff_slack(const CostPoint &point, double coherence, const CostRates &rates, BoundForm form) {
    if (point.cp_norm < 1.0 - kDomainTol) {
        throw Error(ErrorKind::contract_violation, "slack needs cp_norm >= 1");
    }
    const double ratio = point.cm_norm / point.cp_norm;
    if (ratio < -kDomainTol || ratio > 1.0 + kDomainTol) {
        throw Error(ErrorKind::contract_violation, "slack needs 0 <= cm_norm/cp_norm <= 1");
    }
    if (coherence < -kDomainTol || coherence > 1.0 + kDomainTol) {
        throw Error(ErrorKind::contract_violation, "coherence must lie in [0, 1]");
    }
    const double n = static_cast<double>(rates.n_samples());
    const double cp_expected = point.cp_norm * rates.r_p() * n;
    const double cm_expected = point.cm_norm * rates.r_m() * n;
    if (std::abs(point.cp_raw - cp_expected) > kDomainTol * std::max(1.0, cp_expected) ||
        std::abs(point.cm_raw - cm_expected) > kDomainTol * std::max(1.0, cm_expected)) {
        throw Error(ErrorKind::contract_violation, "raw costs inconsistent with the cost rates");
    }
    return tradeoff_slack_clamped(point.cp_norm, point.cm_norm, coherence, form);
}

double tradeoff_slack_clamped(double cp_norm, double cm_norm, double coherence, BoundForm form) {
    return tradeoff_rhs(coherence, form) - tradeoff_lhs(cp_norm, cm_norm);
}

bool on_saturating_branch(double theta, double alpha) {
    constexpr double pi = std::numbers::pi;
    // Postselections α and α + π are the same state.
    double a = std::remainder(alpha, pi);
    if (a <= -pi / 2.0) {
        a += pi;
    }
    constexpr double tol = 1e-12;
    const bool lower = a >= theta - pi / 2.0 - tol && a <= -theta + tol;
    const bool upper = a >= theta - tol && a <= pi / 2.0 - theta + tol;
    return lower || upper;
}

std::vector<double> default_alpha_grid(double theta, std::size_t n) {
    constexpr double pi = std::numbers::pi;
    const double anchors[] = {-theta, theta - pi / 2.0};
    std::vector<double> grid;
    grid.reserve(n + 2);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = n == 1 ? 0.5 : static_cast<double>(k) / static_cast<double>(n - 1);
        const double a = -pi / 2.0 + pi * t;
        if (std::none_of(std::begin(anchors), std::end(anchors), [&](double x) { return std::abs(a - x) < 1e-12; })) {
            grid.push_back(a);
        }
    }
    grid.insert(grid.end(), std::begin(anchors), std::end(anchors));
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::erase_if(grid, [&](double a) { return std::abs(std::cos(a + theta)) < kGridCosFloor; });
    return grid;
}

std::vector<TradeoffSample> boundary_curve(double theta, std::span<const double> alpha_grid,
                                           const CostRates &rates, BoundForm form) {
    if (!(theta > 0.0 && theta <= std::numbers::pi / 4.0 + 1e-15)) {
        throw Error(ErrorKind::contract_violation, "boundary curve needs theta in (0, pi/4]");
    }
    if (alpha_grid.empty()) {
        throw Error(ErrorKind::contract_violation, "boundary curve needs a non-empty alpha grid");
    }
    const ReferenceBasis basis = ReferenceBasis::computational();
    const HermitianOperator sigma = basis.sigma();
    const Ket psi_si = basis.real_superposition(theta);
    const Ket signal(sigma.matrix().apply(psi_si.amplitudes()));
    const double coherence = l1_coherence(DensityMatrix::pure(psi_si), basis);
    const BlochVector r2 = bloch_of(signal, basis);
    const BlochVector r3 = bloch_of(psi_si, basis);

    std::vector<TradeoffSample> all;
    all.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        const BlochVector r1 = bloch_of(basis.real_superposition(alpha), basis);
        const CostPoint pt = cost_point_geometric(r1, r2, r3, rates);
        all.push_back({alpha, pt, tradeoff_slack(pt, coherence, rates, form)});
    }
    std::stable_sort(all.begin(), all.end(), [](const auto &x, const auto &y) {
        if (x.cost.cp_norm != y.cost.cp_norm) {
            return x.cost.cp_norm < y.cost.cp_norm;
        }
        return x.cost.cm_norm < y.cost.cm_norm;
    });

    // Non-dominated points: cm strictly decreasing in cp.
    std::vector<TradeoffSample> frontier;
    for (const auto &s : all) {
        if (frontier.empty() || s.cost.cm_norm < frontier.back().cost.cm_norm) {
            frontier.push_back(s);
        }
    }

    // Thin to the first frontier point of each cp bucket, keeping the endpoint.
    std::vector<TradeoffSample> curve;
    long last_bucket = std::numeric_limits<long>::min();
    for (const auto &s : frontier) {
        const auto bucket = static_cast<long>(std::floor((s.cost.cp_norm - 1.0) / kBucketWidth));
        if (bucket != last_bucket) {
            curve.push_back(s);
            last_bucket = bucket;
        }
    }
    if (curve.back().alpha != frontier.back().alpha) {
        curve.push_back(frontier.back());
    }
    return curve;
}

Region classify_region(const CostPoint &point, double tolerance) {
    return point.cm_norm < 1.0 - tolerance ? Region::advantage : Region::trivial;
}

}  // namespace wva
