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

#include "gtest/gtest.h"

#include "test_support.hpp"
#include "wva/experiment.hpp"

using namespace wva;
using namespace wva::testing;

namespace {

void expect_error(ErrorKind kind, const auto &fn) {
    try {
        fn();
        ADD_FAILURE() << "expected " << to_string(kind);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

const ReferenceBasis kZ = ReferenceBasis::computational();
const ReferenceBasis kY = ReferenceBasis::sigma_y_eigenbasis();
const CostRates kUnit(1.0, 1.0, 1);

const std::vector<double> kThetas{kPi / 16.0, kPi / 12.0, kPi / 8.0, kPi / 6.0, kPi / 5.0, kPi / 4.5, kPi / 4.0};

CostPoint geometric(double theta, double alpha) {
    const Ket si = kZ.real_superposition(theta);
    const Ket signal(kZ.sigma().matrix().apply(si.amplitudes()));
    return cost_point_geometric(bloch_of(kZ.real_superposition(alpha), kZ), bloch_of(signal, kZ), bloch_of(si, kZ),
                                kUnit);
}

double coherence(double theta) {
    return l1_coherence(DensityMatrix::pure(kZ.real_superposition(theta)), kZ);
}

}  // namespace

TEST(CostRates, RejectsNonPositive) {
    expect_error(ErrorKind::contract_violation, [] { CostRates(0.0, 1.0, 1); });
    expect_error(ErrorKind::contract_violation, [] { CostRates(1.0, -1.0, 1); });
    expect_error(ErrorKind::contract_violation, [] { CostRates(1.0, 1.0, 0); });
}

TEST(L1Coherence, Examples) {
    const DensityMatrix mix(ComplexMatrix{{0.3, 0.0}, {0.0, 0.7}});
    EXPECT_NEAR(l1_coherence(mix, kZ), 0.0, 1e-15);
    EXPECT_NEAR(coherence(kPi / 4.0), 1.0, 1e-12);
    EXPECT_NEAR(coherence(kPi / 6.0), 0.8660254037844386, 1e-12);
    EXPECT_NEAR(l1_coherence(DensityMatrix::pure(kY.real_superposition(kPi / 6.0)), kY), 0.8660254037844386, 1e-12);
}

TEST(CostPoint, Examples) {
    CostPoint pt = cost_point(4.0, 4.0, 4.0, kUnit);
    EXPECT_DOUBLE_EQ(pt.cp_norm, 1.0);
    EXPECT_DOUBLE_EQ(pt.cm_norm, 1.0);

    pt = cost_point(4.0, 4.0, 16.0, kUnit);
    EXPECT_DOUBLE_EQ(pt.cp_norm, 1.0);
    EXPECT_DOUBLE_EQ(pt.cm_norm, 0.25);

    const double alpha = -kPi / 4.0, theta = kPi / 6.0;
    const double c_plus = std::cos(alpha + theta), c_minus = std::cos(alpha - theta);
    const double fm = 4.0 * c_plus * c_plus;
    const double Fm = 4.0 * c_plus * c_plus / (c_minus * c_minus);
    pt = cost_point(4.0, fm, Fm, kUnit);
    EXPECT_NEAR(pt.cp_norm, 1.0717967697244908, 1e-12);
    EXPECT_NEAR(pt.cm_norm, 0.07179676972449094, 1e-12);
}

TEST(CostPoint, RawCostsScaleWithRates) {
    const CostRates rates(2.5, 0.5, 700);
    const CostPoint pt = cost_point(4.0, 2.0, 8.0, rates);
    EXPECT_DOUBLE_EQ(pt.cp_raw, 2.0 * 2.5 * 700);
    EXPECT_DOUBLE_EQ(pt.cm_raw, 0.5 * 0.5 * 700);
    EXPECT_DOUBLE_EQ(pt.n_wva, 1400.0);
}

TEST(CostPoint, RejectsZeroProbabilisticQfi) {
    expect_error(ErrorKind::infinite_preparation_cost, [] { cost_point(4.0, 0.0, 4.0, kUnit); });
}

TEST(CostPointGeometric, Examples) {
    const BlochVector r{0.6, 0.0, 0.8};
    EXPECT_DOUBLE_EQ(cost_point_geometric(r, r, r, kUnit).cp_norm, 1.0);

    const CostPoint pt = geometric(kPi / 6.0, -kPi / 6.0);
    EXPECT_NEAR(pt.cp_norm, 1.0, 1e-12);
    EXPECT_NEAR(pt.cm_norm, 0.25, 1e-12);
}

TEST(CostPointGeometric, MatchesQfiRoute) {
    for (double theta : kThetas) {
        for (double alpha : {kPi / 2.0, -0.3, 0.2, 1.0}) {
            const double c_plus = std::cos(alpha + theta), c_minus = std::cos(alpha - theta);
            if (std::abs(c_plus) < 1e-3 || std::abs(c_minus) < 1e-3) {
                continue;
            }
            const CostPoint a = geometric(theta, alpha);
            const CostPoint b =
                cost_point(4.0, 4.0 * c_plus * c_plus, 4.0 * c_plus * c_plus / (c_minus * c_minus), kUnit);
            ASSERT_NEAR(a.cp_norm, b.cp_norm, 1e-9 * b.cp_norm);
            ASSERT_NEAR(a.cm_norm, b.cm_norm, 1e-9 * std::max(1.0, b.cm_norm));
        }
    }
}

TEST(CostPointGeometric, AntipodalIsInfinite) {
    const BlochVector up{0.0, 0.0, 1.0}, down{0.0, 0.0, -1.0};
    expect_error(ErrorKind::infinite_preparation_cost, [&] { cost_point_geometric(up, down, up, kUnit); });
}

TEST(CostPoint, ExactMatchesLeadingInWeakRegime) {
    for (double theta : kThetas) {
        for (int k = 0; k < 36; ++k) {
            const double alpha = -kPi / 2.0 + kPi * (k + 0.5) / 36.0;
            const WvaSetup s = experiment_setup(theta, alpha, 1e-4);
            if (std::abs(std::cos(alpha + theta)) < 0.05 || std::abs(std::cos(alpha - theta)) < 0.05 ||
                !in_weak_regime(s)) {
                continue;
            }
            const double p = postselect(s).p;
            const double Fm = fm_exact(s);
            const CostPoint ex = cost_point(4.0, p * Fm, Fm, kUnit);
            const CostPoint lead = geometric(theta, alpha);
            ASSERT_NEAR(ex.cp_norm, lead.cp_norm, 1e-3 * lead.cp_norm) << theta << " " << alpha;
            ASSERT_NEAR(ex.cm_norm, lead.cm_norm, 1e-3 * lead.cm_norm) << theta << " " << alpha;
        }
    }
}

TEST(TradeoffSlack, SaturationAtMinimalPreparation) {
    const double c = coherence(kPi / 6.0);
    const CostPoint pt = cost_point(1.0, 1.0, 1.0 / (1.0 - c * c), kUnit);
    EXPECT_NEAR(pt.cm_norm, 0.25, 1e-12);
    EXPECT_NEAR(tradeoff_slack(pt, c, kUnit), 0.0, 1e-9);
    EXPECT_NEAR(tradeoff_rhs(c), 2.0 * kPi / 3.0, 1e-12);
}

TEST(TradeoffSlack, MaximalCoherenceIsVacuous) {
    for (int trial = 0; trial < 50; ++trial) {
        const CostPoint pt = geometric(uniform(0.05, kPi / 4.0), uniform(-1.4, 1.4));
        const double lhs = tradeoff_lhs(pt.cp_norm, pt.cm_norm);
        ASSERT_NEAR(tradeoff_slack(pt, 1.0, kUnit), kPi - lhs, 1e-12);
        ASSERT_GE(kPi - lhs, 0.0);
    }
}

TEST(TradeoffSlack, CoplanarSaturation) {
    const CostPoint pt = geometric(kPi / 6.0, -kPi / 4.0);
    EXPECT_NEAR(tradeoff_slack(pt, coherence(kPi / 6.0), kUnit), 0.0, 1e-9);
}

TEST(TradeoffSlack, Preconditions) {
    CostPoint pt = cost_point(1.0, 2.0, 1.0, kUnit);  // cp = 0.5
    expect_error(ErrorKind::contract_violation, [&] { tradeoff_slack(pt, 0.5, kUnit); });
    pt = cost_point(1.0, 1.0, 0.5, kUnit);  // cm/cp = 2
    expect_error(ErrorKind::contract_violation, [&] { tradeoff_slack(pt, 0.5, kUnit); });
    pt = cost_point(1.0, 1.0, 1.0, kUnit);
    expect_error(ErrorKind::contract_violation, [&] { tradeoff_slack(pt, 1.5, kUnit); });
    expect_error(ErrorKind::contract_violation, [&] { tradeoff_slack(pt, 0.5, CostRates(2.0, 1.0, 1)); });
}

TEST(TradeoffSlack, PrintedFormIsNeverTighter) {
    for (double c = 0.0; c <= 1.0; c += 0.01) {
        ASSERT_GE(tradeoff_rhs(c, BoundForm::printed), tradeoff_rhs(c, BoundForm::corrected) - 1e-15);
    }
}

TEST(TradeoffSlack, PrintedFormOverestimatesSaturationAtPiOverEight) {
    const double c = coherence(kPi / 8.0);
    const CostPoint pt = geometric(kPi / 8.0, -kPi / 8.0);
    EXPECT_NEAR(tradeoff_slack(pt, c, kUnit), 0.0, 1e-9);
    EXPECT_GT(tradeoff_slack(pt, c, kUnit, BoundForm::printed), 0.1);
}

TEST(TradeoffBound, SoundnessAndSaturationSweep) {
    for (double theta : kThetas) {
        const double c = coherence(theta);
        int on_branch = 0, tight = 0;
        for (double alpha : default_alpha_grid(theta)) {
            const CostPoint pt = geometric(theta, alpha);
            const double slack = tradeoff_slack(pt, c, kUnit);
            ASSERT_GE(slack, -1e-9) << theta << " " << alpha;
            if (on_saturating_branch(theta, alpha)) {
                ++on_branch;
                tight += std::abs(slack) <= 1e-6 ? 1 : 0;
            }
        }
        ASSERT_GT(on_branch, 0);
        EXPECT_GE(2 * tight, on_branch) << theta;
        EXPECT_EQ(tight, on_branch) << theta;
    }
}

TEST(SaturatingBranch, Membership) {
    const double theta = kPi / 6.0;
    EXPECT_TRUE(on_saturating_branch(theta, -theta));
    EXPECT_TRUE(on_saturating_branch(theta, theta - kPi / 2.0));
    EXPECT_TRUE(on_saturating_branch(theta, theta));
    EXPECT_TRUE(on_saturating_branch(theta, -theta + kPi));
    EXPECT_FALSE(on_saturating_branch(theta, 0.0));
    EXPECT_FALSE(on_saturating_branch(theta, kPi / 2.0));
}

TEST(AlphaGrid, ContainsAnchorsAndAvoidsPoles) {
    const double theta = kPi / 6.0;
    const std::vector<double> grid = default_alpha_grid(theta);
    EXPECT_GE(grid.size(), 715u);
    EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
    EXPECT_NE(std::find(grid.begin(), grid.end(), -theta), grid.end());
    EXPECT_NE(std::find(grid.begin(), grid.end(), theta - kPi / 2.0), grid.end());
    for (double a : grid) {
        ASSERT_GE(std::abs(std::cos(a + theta)), 1e-3);
    }
}

TEST(BoundaryCurve, MaximalCoherenceReachesOrigin) {
    const auto grid = default_alpha_grid(kPi / 4.0);
    const auto curve = boundary_curve(kPi / 4.0, grid, kUnit);
    ASSERT_FALSE(curve.empty());
    EXPECT_NEAR(curve.front().cost.cp_norm, 1.0, 1e-9);
    EXPECT_NEAR(curve.front().cost.cm_norm, 0.0, 1e-9);
}

TEST(BoundaryCurve, LeftmostPointAtPiOverSix) {
    const auto grid = default_alpha_grid(kPi / 6.0);
    const auto curve = boundary_curve(kPi / 6.0, grid, kUnit);
    EXPECT_NEAR(curve.front().cost.cp_norm, 1.0, 1e-9);
    EXPECT_NEAR(curve.front().cost.cm_norm, 0.25, 1e-9);
    EXPECT_NEAR(curve.back().cost.cm_norm, 0.0, 1e-9);
}

TEST(BoundaryCurve, NearlyIncoherentHasNoAdvantage) {
    const double theta = 1e-10;
    const auto grid = default_alpha_grid(theta);
    for (const auto &s : boundary_curve(theta, grid, kUnit)) {
        ASSERT_GE(s.cost.cm_norm, 1.0 - 1e-6) << s.alpha;
    }
}

TEST(BoundaryCurve, EnvelopeProperties) {
    for (double theta : kThetas) {
        const auto grid = default_alpha_grid(theta);
        const auto curve = boundary_curve(theta, grid, kUnit);
        const double lo = std::cos(2.0 * theta) * std::cos(2.0 * theta);
        EXPECT_NEAR(curve.front().cost.cm_norm, lo, 1e-9) << theta;
        for (std::size_t k = 0; k < curve.size(); ++k) {
            ASSERT_GE(curve[k].slack, -1e-9);
            ASSERT_LE(std::abs(curve[k].slack), 1e-6) << theta << " " << curve[k].alpha;
            if (k > 0) {
                ASSERT_GT(curve[k].cost.cp_norm, curve[k - 1].cost.cp_norm);
                ASSERT_LE(curve[k].cost.cm_norm, curve[k - 1].cost.cm_norm);
            }
        }
    }
}

TEST(BoundaryCurve, MinimalMeasurementCostFallsWithCoherence) {
    double previous = 2.0;
    for (double theta : kThetas) {
        const auto grid = default_alpha_grid(theta);
        const double cm = boundary_curve(theta, grid, kUnit).front().cost.cm_norm;
        const double c = coherence(theta);
        EXPECT_NEAR(cm, 1.0 - c * c, 1e-9);
        EXPECT_LT(cm, previous);
        previous = cm;
    }
}

TEST(BoundaryCurve, Preconditions) {
    const std::vector<double> empty;
    const std::vector<double> one{0.1};
    expect_error(ErrorKind::contract_violation, [&] { boundary_curve(kPi / 6.0, empty, kUnit); });
    expect_error(ErrorKind::contract_violation, [&] { boundary_curve(0.0, one, kUnit); });
    expect_error(ErrorKind::contract_violation, [&] { boundary_curve(1.0, one, kUnit); });
}

TEST(ClassifyRegion, Examples) {
    EXPECT_EQ(classify_region(cost_point(4.0, 4.0, 16.0, kUnit)), Region::advantage);
    CostPoint pt;
    pt.cp_norm = 1.33;
    pt.cm_norm = 1.0;
    EXPECT_EQ(classify_region(pt), Region::trivial);
}

TEST(ClassifyRegion, IncoherentInputIsTrivial) {
    const DensityMatrix rho(DensityMatrix::pure(kY.ket0()).matrix() * Complex(0.4) +
                            DensityMatrix::pure(kY.ket1()).matrix() * Complex(0.6));
    for (int k = 0; k < 19; ++k) {
        const double alpha = -kPi / 2.0 + kPi * (k + 0.5) / 19.0;
        const MixedWvaSetup s(rho, kY.real_superposition(alpha), plus_meter(), kY.sigma(), pauli_z(), 1e-3);
        const double p = postselect_mixed(s).p;
        const double Fm = fm_mixed_exact(s);
        EXPECT_EQ(classify_region(cost_point(4.0, p * Fm, Fm, kUnit), 1e-4), Region::trivial) << alpha;
    }
}
