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

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>

#include "wva/experiment.hpp"
#include "wva/fisher.hpp"
#include "wva/postselect.hpp"

namespace wva::cli {

namespace {

constexpr double kPi = std::numbers::pi;

class Tally {
   public:
    explicit Tally(std::string name) {
        result_.name = std::move(name);
        result_.worst_slack = std::numeric_limits<double>::infinity();
    }
    /// Records one check; passes iff margin >= 0.
    bool add(double margin) {
        ++result_.checks;
        result_.worst_slack = std::min(result_.worst_slack, margin);
        if (!(margin >= 0.0)) {
            ++result_.failures;
            result_.pass = false;
            return false;
        }
        return true;
    }
    void fail() {
        ++result_.checks;
        ++result_.failures;
        result_.pass = false;
    }
    SuiteResult &result() {
        return result_;
    }

   private:
    SuiteResult result_;
};

Ket random_ket(std::mt19937_64 &rng, std::size_t dim) {
    std::normal_distribution<double> n(0.0, 1.0);
    Amplitudes a(dim);
    for (auto &c : a) {
        c = {n(rng), n(rng)};
    }
    return Ket(std::move(a));
}

Ket random_orthogonal(std::mt19937_64 &rng, const Ket &v) {
    const Ket r = random_ket(rng, v.dim());
    const Complex ov = inner(v, r);
    Amplitudes out(v.dim());
    for (std::size_t k = 0; k < v.dim(); ++k) {
        out[k] = r[k] - ov * v[k];
    }
    return Ket(std::move(out));
}

HermitianOperator random_pauli_type(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double t = std::acos(2.0 * u(rng) - 1.0);
    const double f = 2.0 * kPi * u(rng);
    const double x = std::sin(t) * std::cos(f), y = std::sin(t) * std::sin(f), z = std::cos(t);
    return HermitianOperator{{z, Complex(x, -y)}, {Complex(x, y), -z}};
}

const std::vector<double> &standard_thetas() {
    static const std::vector<double> t{kPi / 16.0, kPi / 12.0, kPi / 8.0, kPi / 6.0,
                                       kPi / 5.0,  kPi / 4.5,  kPi / 4.0};
    return t;
}

std::vector<double> alpha_grid(int n) {
    std::vector<double> a;
    for (int k = 0; k < n; ++k) {
        a.push_back(-kPi / 2.0 + kPi * (k + 0.5) / n);
    }
    return a;
}

DensityMatrix incoherent(double mu) {
    const ReferenceBasis y = ReferenceBasis::sigma_y_eigenbasis();
    return DensityMatrix(DensityMatrix::pure(y.ket0()).matrix() * Complex(mu) +
                         DensityMatrix::pure(y.ket1()).matrix() * Complex(1.0 - mu));
}

SuiteResult suite_overlap(const VerifyOptions &o) {
    Tally t("overlap");
    std::mt19937_64 rng(o.seed);
    const ReferenceBasis basis = ReferenceBasis::computational();
    for (int k = 0; k < 1000; ++k) {
        const Ket a = random_ket(rng, 2);
        const Ket b = random_ket(rng, 2);
        const double half = bloch_angle(bloch_of(a, basis), bloch_of(b, basis)) / 2.0;
        t.add(1e-10 - std::abs(overlap_sq(a, b) - std::cos(half) * std::cos(half)));
    }
    return t.result();
}

SuiteResult suite_conventional(const VerifyOptions &) {
    Tally t("conventional");
    const ReferenceBasis y = ReferenceBasis::sigma_y_eigenbasis();
    const Ket meter{1.0, 1.0};
    const HermitianOperator a = y.sigma();
    const HermitianOperator m = pauli_z();
    for (double theta : standard_thetas()) {
        const Ket input = tensor(y.real_superposition(theta), meter);
        const PureFamily f = [&](double g) { return Ket(coupling_unitary(a, m, g).apply(input)); };
        t.add(1e-6 - std::abs(qfi_pure(f, 0.0349, 1e-4) - 4.0));
        t.add(1e-6 - std::abs(qfi_product_coupling(DensityMatrix::pure(y.real_superposition(theta)), meter, a, m) - 4.0));
    }
    for (int k = 1; k <= 9; ++k) {
        const DensityMatrix rho = incoherent(0.1 * k);
        t.add(1e-6 - std::abs(qfi_product_coupling(rho, meter, a, m) - 4.0));
        const ComplexMatrix full = kron(rho.matrix(), DensityMatrix::pure(meter).matrix());
        const MixedFamily f = [&](double g) {
            const UnitaryOperator u = coupling_unitary(a, m, g);
            return DensityMatrix(u.matrix() * full * u.matrix().adjoint());
        };
        t.add(1e-6 - std::abs(qfi_mixed(f, 0.0349) - 4.0));
    }
    return t.result();
}

SuiteResult suite_leading_order(const VerifyOptions &) {
    Tally t("leading-order");
    const ReferenceBasis y = ReferenceBasis::sigma_y_eigenbasis();
    for (double theta : standard_thetas()) {
        for (double alpha : alpha_grid(72)) {
            const Ket si = y.real_superposition(theta);
            const Ket sf = y.real_superposition(alpha);
            if (std::abs(inner(sf, si)) < 0.05) {
                continue;
            }
            const double lead = fm_leading(1.0, weak_value(si, sf, y.sigma()));
            double previous = std::numeric_limits<double>::infinity();
            bool any = false;
            for (double g : {1e-2, 1e-3, 1e-4}) {
                const WvaSetup s = experiment_setup(theta, alpha, g);
                if (!in_weak_regime(s)) {
                    continue;
                }
                const double diff = std::abs(fm_exact(s) - lead);
                if (any && !(diff < previous || diff <= 1e-9)) {
                    t.fail();
                }
                previous = diff;
                any = true;
            }
            if (any) {
                const double allowed = std::max(1e-3 * lead, 1e-9);
                t.add((allowed - previous) / std::max(lead, 1.0));
            }
        }
    }
    return t.result();
}

SuiteResult suite_ceiling(const VerifyOptions &) {
    Tally t("ceiling");
    for (double theta : standard_thetas()) {
        for (double alpha : alpha_grid(72)) {
            const WvaSetup s = experiment_setup(theta, alpha, 1e-3);
            t.add(4.0 * s.omega() * (1.0 + 1e-3) - probabilistic_qfi(s).exact);
        }
        const WvaSetup opt = experiment_setup(theta, -theta, 1e-3);
        if (!in_weak_regime(opt)) {
            continue;  // at maximal coherence the optimal postselection is orthogonal
        }
        t.add(1e-3 - std::abs(probabilistic_qfi(opt).exact - 4.0 * opt.omega()) / (4.0 * opt.omega()));
    }
    return t.result();
}

SuiteResult suite_incoherent(const VerifyOptions &) {
    Tally t("incoherent");
    const ReferenceBasis y = ReferenceBasis::sigma_y_eigenbasis();
    for (int k = 1; k <= 9; ++k) {
        for (double alpha : alpha_grid(36)) {
            for (double g : {1e-3, 0.0349, 0.1}) {
                const MixedWvaSetup s(incoherent(0.1 * k), y.real_superposition(alpha), Ket{1.0, 1.0}, y.sigma(),
                                      pauli_z(), g);
                t.add(4.0 * s.omega() + 1e-4 - fm_mixed_exact(s));
            }
        }
    }
    return t.result();
}

SuiteResult suite_eq11(const VerifyOptions &o) {
    Tally t("eq11");
    const CostRates unit(1.0, 1.0, 1);
    const ReferenceBasis basis = ReferenceBasis::computational();
    for (double theta : theta_sweep(o.theta_grid)) {
        const Ket si = basis.real_superposition(theta);
        const Ket signal(basis.sigma().matrix().apply(si.amplitudes()));
        const BlochVector r2 = bloch_of(signal, basis), r3 = bloch_of(si, basis);
        const double c = l1_coherence(DensityMatrix::pure(si), basis);
        std::size_t on_branch = 0, tight = 0;
        bool theta_ok = true;
        for (double alpha : default_alpha_grid(theta)) {
            const CostPoint pt = cost_point_geometric(bloch_of(basis.real_superposition(alpha), basis), r2, r3, unit);
            const double slack = tradeoff_slack(pt, c, unit, o.bound);
            theta_ok &= t.add(slack + 1e-9);
            if (on_saturating_branch(theta, alpha)) {
                ++on_branch;
                tight += std::abs(slack) <= 1e-6 ? 1 : 0;
            }
        }
        if (tight < on_branch || on_branch == 0) {
            t.fail();
            theta_ok = false;
        }
        const auto grid = default_alpha_grid(theta);
        const auto curve = boundary_curve(theta, grid, unit, o.bound);
        const double lo = std::pow(std::cos(2.0 * theta), 2);
        if (std::abs(curve.front().cost.cp_norm - 1.0) > 1e-9 || std::abs(curve.front().cost.cm_norm - lo) > 1e-9) {
            t.fail();
            theta_ok = false;
        }
        if (!theta_ok) {
            t.result().failing_thetas.push_back(theta);
        }
    }
    SuiteResult r = t.result();
    r.worst_slack -= 1e-9;  // report the raw slack, not the margin
    return r;
}

SuiteResult suite_oracles(const VerifyOptions &o) {
    Tally t("oracles");
    std::mt19937_64 rng(o.seed ^ 0x5bd1e995ULL);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
        const Ket v0 = random_ket(rng, 4);
        const Ket v1 = random_orthogonal(rng, v0);
        const double w = 0.05 + 0.9 * u(rng);
        const HermitianOperator a = random_pauli_type(rng);
        const HermitianOperator m = random_pauli_type(rng);
        const double g = 2.0 * u(rng) - 1.0;
        const UnitaryFamily uf = [&](double x) { return coupling_unitary(a, m, x); };
        const ComplexMatrix rho = ComplexMatrix::outer(v0.amplitudes(), v0.amplitudes()) * Complex(w) +
                                  ComplexMatrix::outer(v1.amplitudes(), v1.amplitudes()) * Complex(1.0 - w);
        const MixedFamily mf = [&](double x) {
            const UnitaryOperator un = uf(x);
            return DensityMatrix(un.matrix() * rho * un.matrix().adjoint());
        };
        const std::vector<double> lambdas{w, 1.0 - w};
        const std::vector<Ket> vectors{v0, v1};
        t.add(1e-6 - std::abs(qfi_spectral_unitary(lambdas, vectors, uf, g) - qfi_mixed(mf, g)));
    }
    for (int k = 0; k < 1000; ++k) {
        const double theta = 0.05 + (kPi / 4.0 - 0.05) * u(rng);
        double alpha = -kPi / 2.0 + kPi * u(rng);
        if (std::abs(std::cos(alpha + theta)) < 0.05 || std::abs(std::cos(alpha - theta)) < 0.05) {
            alpha = -theta;
        }
        const ConditionalMle mle(theta, alpha, kPi / 4.0);
        const auto n = static_cast<std::uint64_t>(1.0 + 1999.0 * u(rng));
        const auto minus = std::min(n, static_cast<std::uint64_t>(u(rng) * static_cast<double>(n + 1)));
        const TrialCounts c{n, n, n - minus, minus};
        double best_g = 0.0, best = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < 512; ++j) {
            const double g = mle.g_max() * j / 511.0;
            const double q = mle.minus_probability(g);
            double ll = 0.0;
            if (c.n_minus > 0) {
                ll += static_cast<double>(c.n_minus) * (q > 0.0 ? std::log(q) : -1e300);
            }
            if (c.n_plus > 0) {
                ll += static_cast<double>(c.n_plus) * (q < 1.0 ? std::log1p(-q) : -1e300);
            }
            if (ll > best) {
                best = ll;
                best_g = g;
            }
        }
        const double cell = mle.g_max() / 511.0;
        t.add((cell - std::abs(mle.estimate(c) - best_g)) / cell);
    }
    return t.result();
}

using SuiteFn = std::function<SuiteResult(const VerifyOptions &)>;

const std::map<std::string, SuiteFn> &suites() {
    static const std::map<std::string, SuiteFn> m{
        {"overlap", suite_overlap},   {"conventional", suite_conventional}, {"leading-order", suite_leading_order},         {"ceiling", suite_ceiling},
        {"incoherent", suite_incoherent}, {"eq11", suite_eq11},          {"oracles", suite_oracles},
    };
    return m;
}

}  // namespace

const std::vector<std::string> &suite_names() {
    static const std::vector<std::string> names{"overlap", "conventional", "leading-order", "ceiling", "incoherent", "eq11", "oracles"};
    return names;
}

SuiteResult run_suite(const std::string &name, const VerifyOptions &options) {
    const auto it = suites().find(name);
    if (it == suites().end()) {
        throw Error(ErrorKind::contract_violation, "unknown verification suite: " + name);
    }
    return it->second(options);
}

std::vector<double> theta_sweep(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorKind::contract_violation, "theta grid must be non-empty");
    }
    if (n == standard_thetas().size()) {
        return standard_thetas();
    }
    std::vector<double> t;
    for (std::size_t k = 0; k < n; ++k) {
        t.push_back(static_cast<double>(k + 1) * kPi / (4.0 * static_cast<double>(n)));
    }
    return t;
}

}  // namespace wva::cli
