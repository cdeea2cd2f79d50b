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

#include "wva/fisher.hpp"

#include <cmath>

namespace wva {

namespace {

constexpr double kOutcomeSkip = 1e-12;
constexpr double kMinAlignedOverlap = 0.9;

void require_step(double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw Error(ErrorKind::contract_violation, "finite-difference step must be positive");
    }
}

// ψ' multiplied by the unit phase making <ψ|ψ'> real-positive.
Amplitudes phase_aligned(const Ket &reference, const Ket &shifted) {
    const Complex ov = inner(reference, shifted);
    if (std::abs(ov) < kMinAlignedOverlap) {
        throw Error(ErrorKind::step_too_large, "family moves too far within one finite-difference step");
    }
    const Complex phase = std::conj(ov) / std::abs(ov);
    Amplitudes out(shifted.amplitudes().begin(), shifted.amplitudes().end());
    for (auto &c : out) {
        c *= phase;
    }
    return out;
}

double trace_expectation(const ComplexMatrix &rho, const ComplexMatrix &op) {
    return (rho * op).trace().real();
}

}  // namespace

double qfi_pure(const PureFamily &family, double g, double step) {
    require_step(step);
    const Ket psi = family(g);
    const Amplitudes plus = phase_aligned(psi, family(g + step));
    const Amplitudes minus = phase_aligned(psi, family(g - step));

    Amplitudes d(psi.dim());
    for (std::size_t k = 0; k < d.size(); ++k) {
        d[k] = (plus[k] - minus[k]) / (2.0 * step);
    }
    const double dd = inner(d, d).real();
    const double overlap = std::norm(inner(psi.amplitudes(), d));
    return 4.0 * (dd - overlap);
}

double qfi_product_coupling(const DensityMatrix &rho_s, const Ket &phi_m, const HermitianOperator &a,
                            const HermitianOperator &m) {
    if (rho_s.dim() != 2 || phi_m.dim() != 2 || a.dim() != 2 || m.dim() != 2) {
        throw Error(ErrorKind::model_dimension, "product coupling needs 2-dim system and meter");
    }
    const ComplexMatrix &r = rho_s.matrix();
    const double a1 = trace_expectation(r, a.matrix());
    const double a2 = trace_expectation(r, a.squared().matrix());
    const double m1 = m.expectation(phi_m);
    const double m2 = m.squared().expectation(phi_m);

    if (std::abs(rho_s.purity() - 1.0) <= 1e-10) {
        return 4.0 * (a2 * m2 - a1 * a1 * m1 * m1);
    }

    const ComplexMatrix commutator = r * a.matrix() - a.matrix() * r;
    if (commutator.max_abs_diff(ComplexMatrix(2)) > 1e-10) {
        throw Error(ErrorKind::unsupported_input,
                    "mixed system state not diagonal in the eigenbasis of A; use qfi_mixed");
    }
    if (std::abs(m1) > 1e-10) {
        throw Error(ErrorKind::unsupported_input,
                    "A-diagonal mixed input needs the meter at <M> = 0; use qfi_mixed");
    }
    return 4.0 * a2 * m2;
}

double qfi_mixed(const MixedFamily &family, double g, double step) {
    require_step(step);
    const DensityMatrix rho = family(g);
    const ComplexMatrix drho = (family(g + step).matrix() - family(g - step).matrix()) *
                               Complex(1.0 / (2.0 * step));
    const EigenSystem es = hermitian_eigs(rho.as_hermitian());

    double f = 0.0;
    const std::size_t n = es.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Amplitudes di = drho.apply(es.vectors[i].amplitudes());
        for (std::size_t j = 0; j < n; ++j) {
            const double denom = es.values[i] + es.values[j];
            if (denom <= kRankCutoff) {
                continue;
            }
            // <j|∂ρ|i>; |.|² is symmetric in i, j.
            f += 2.0 * std::norm(inner(es.vectors[j].amplitudes(), di)) / denom;
        }
    }
    return f;
}

double qfi_spectral_unitary(std::span<const double> lambdas, std::span<const Ket> vectors,
                            const UnitaryFamily &u_family, double g, double step) {
    require_step(step);
    if (lambdas.size() != vectors.size() || lambdas.empty()) {
        throw Error(ErrorKind::contract_violation, "need one eigenvalue per eigenvector");
    }
    double total = 0.0;
    for (double l : lambdas) {
        if (l < 0.0) {
            throw Error(ErrorKind::contract_violation, "spectral weights must be non-negative");
        }
        total += l;
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw Error(ErrorKind::contract_violation, "spectral weights must sum to 1");
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = i; j < vectors.size(); ++j) {
            const double expected = i == j ? 1.0 : 0.0;
            if (std::abs(inner(vectors[i], vectors[j]) - expected) > 1e-10) {
                throw Error(ErrorKind::contract_violation, "spectral vectors are not orthonormal");
            }
        }
    }

    const ComplexMatrix u = u_family(g).matrix();
    const ComplexMatrix du =
        (u_family(g + step).matrix() - u_family(g - step).matrix()) * Complex(1.0 / (2.0 * step));
    const ComplexMatrix du_dag_du = du.adjoint() * du;
    const ComplexMatrix generator = u.adjoint() * du;

    double first = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        const auto v = vectors[i].amplitudes();
        first += 4.0 * lambdas[i] * inner(v, du_dag_du.apply(v)).real();
    }
    double cross = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            const double denom = lambdas[i] + lambdas[j];
            if (denom <= kRankCutoff) {
                continue;
            }
            const Complex element = inner(vectors[i].amplitudes(), generator.apply(vectors[j].amplitudes()));
            cross += 8.0 * lambdas[i] * lambdas[j] / denom * std::norm(element);
        }
    }
    return first - cross;
}

double cfi_discrete(const OutcomeModel &model, double g, double step) {
    require_step(step);
    const auto probe = [&](double x) {
        std::vector<double> p = model(x);
        double sum = 0.0;
        for (double v : p) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw Error(ErrorKind::out_of_domain, "outcome probability outside [0, 1]");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw Error(ErrorKind::out_of_domain, "outcome probabilities do not sum to 1");
        }
        return p;
    };
    const std::vector<double> c = probe(g);
    const std::vector<double> hi = probe(g + step);
    const std::vector<double> lo = probe(g - step);
    if (hi.size() != c.size() || lo.size() != c.size()) {
        throw Error(ErrorKind::contract_violation, "outcome count changes with g");
    }

    double f = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] < kOutcomeSkip && hi[k] < kOutcomeSkip && lo[k] < kOutcomeSkip) {
            continue;
        }
        if (!(c[k] > 0.0)) {
            throw Error(ErrorKind::out_of_domain, "outcome vanishes at the probe point but not nearby");
        }
        const double d = (hi[k] - lo[k]) / (2.0 * step);
        f += d * d / c[k];
    }
    return f;
}

}  // namespace wva
