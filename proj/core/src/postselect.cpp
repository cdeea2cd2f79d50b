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

#include "wva/postselect.hpp"

#include <cmath>

namespace wva {

namespace {

constexpr double kOverlapFloor = 1e-12;

double balanced_meter_omega(const Ket &phi_mi, const HermitianOperator &m) {
    if (phi_mi.dim() != 2 || m.dim() != 2) {
        throw Error(ErrorKind::model_dimension, "meter must be a qubit");
    }
    if (std::abs(m.expectation(phi_mi)) > 1e-10) {
        throw Error(ErrorKind::contract_violation, "meter must start at the balance zero point <M> = 0");
    }
    const double omega = m.squared().expectation(phi_mi);
    if (!(omega > 0.0)) {
        throw Error(ErrorKind::contract_violation, "meter needs Omega = <M^2> > 0");
    }
    return omega;
}

// <ψ_sf| ⊗ 1 applied to a 4-dim product vector.
Amplitudes project_system(const Ket &psi_sf, std::span<const Complex> joint) {
    Amplitudes meter(2);
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t b = 0; b < 2; ++b) {
            meter[b] += std::conj(psi_sf[s]) * joint[s * 2 + b];
        }
    }
    return meter;
}

// Unnormalized meter vector <ψ_sf|U(g)|ψ>|φ_mi>.
Amplitudes collapsed_meter(const Ket &psi, const Ket &psi_sf, const Ket &phi_mi, const UnitaryOperator &u) {
    return project_system(psi_sf, u.apply(tensor(psi, phi_mi)));
}

}  // namespace

WvaSetup::WvaSetup(Ket psi_si, Ket psi_sf, Ket phi_mi, HermitianOperator a, HermitianOperator m, double g)
    : psi_si_(std::move(psi_si)),
      psi_sf_(std::move(psi_sf)),
      phi_mi_(std::move(phi_mi)),
      a_(std::move(a)),
      m_(std::move(m)),
      g_(g),
      omega_(balanced_meter_omega(phi_mi_, m_)) {
    if (psi_si_.dim() != 2 || psi_sf_.dim() != 2 || a_.dim() != 2) {
        throw Error(ErrorKind::model_dimension, "system must be a qubit");
    }
}

double WvaSetup::conventional_qfi() const {
    return 4.0 * a_.squared().expectation(psi_si_) * omega_;
}

WvaSetup WvaSetup::with_g(double g) const {
    WvaSetup copy = *this;
    copy.g_ = g;
    return copy;
}

WvaSetup WvaSetup::with_postselection(Ket psi_sf) const {
    return WvaSetup(psi_si_, std::move(psi_sf), phi_mi_, a_, m_, g_);
}

Complex weak_value(const Ket &psi_si, const Ket &psi_sf, const HermitianOperator &a) {
    const Complex overlap = inner(psi_sf, psi_si);
    if (std::abs(overlap) < kOverlapFloor) {
        throw Error(ErrorKind::orthogonal_postselection, "weak value undefined for orthogonal postselection");
    }
    return inner(psi_sf.amplitudes(), a.matrix().apply(psi_si.amplitudes())) / overlap;
}

PostselectionResult postselect(const WvaSetup &setup) {
    const UnitaryOperator u = coupling_unitary(setup.a(), setup.m(), setup.g());
    const Amplitudes meter = collapsed_meter(setup.psi_si(), setup.psi_sf(), setup.phi_mi(), u);
    const double p = inner(meter, meter).real();
    if (p < kPostselectionFloor) {
        throw Error(ErrorKind::vanishing_postselection, "postselection probability below floor");
    }
    std::optional<Complex> a_w;
    if (std::abs(inner(setup.psi_sf(), setup.psi_si())) >= kOverlapFloor) {
        a_w = weak_value(setup.psi_si(), setup.psi_sf(), setup.a());
    }
    return {p, Ket(meter), a_w};
}

double fm_exact(const WvaSetup &setup, double step) {
    return qfi_pure([&](double g) { return postselect(setup.with_g(g)).phi_mf; }, setup.g(), step);
}

double fm_leading(double omega, Complex a_w) {
    if (!(omega > 0.0)) {
        throw Error(ErrorKind::contract_violation, "Omega must be positive");
    }
    return 4.0 * omega * std::norm(a_w);
}

ProbabilisticQfi probabilistic_qfi(const WvaSetup &setup, double step) {
    const double p = postselect(setup).p;
    const double exact = p * fm_exact(setup, step);
    const Complex signal =
        inner(setup.psi_sf().amplitudes(), setup.a().matrix().apply(setup.psi_si().amplitudes()));
    return {exact, 4.0 * setup.omega() * std::norm(signal)};
}

Ket optimal_postselection(const Ket &psi_si, const HermitianOperator &a) {
    const Amplitudes image = a.matrix().apply(psi_si.amplitudes());
    if (inner(image, image).real() <= 1e-12) {
        throw Error(ErrorKind::degenerate_configuration, "A annihilates the pre-selected state");
    }
    return Ket(image);
}

Ket near_orthogonal_postselection(const Ket &psi_si, const HermitianOperator &a, double epsilon) {
    if (epsilon == 0.0) {
        throw Error(ErrorKind::orthogonal_postselection, "epsilon = 0 asks for exact orthogonality");
    }
    if (!(epsilon > 0.0 && epsilon <= 0.2)) {
        throw Error(ErrorKind::contract_violation, "epsilon must lie in (0, 0.2]");
    }
    const Amplitudes image = a.matrix().apply(psi_si.amplitudes());
    const double mean = a.expectation(psi_si);
    Amplitudes perp(2);
    for (std::size_t k = 0; k < 2; ++k) {
        perp[k] = image[k] - mean * psi_si[k];
    }
    if (norm(perp) < 1e-12) {
        throw Error(ErrorKind::unsupported_input, "pre-selected state is an eigenstate of A; no amplification");
    }
    const Ket w(perp);

    const double along = std::sqrt(1.0 - epsilon * epsilon);
    const auto candidate = [&](double sign) {
        Amplitudes r(2);
        for (std::size_t k = 0; k < 2; ++k) {
            r[k] = epsilon * psi_si[k] + sign * along * w[k];
        }
        return Ket(std::move(r));
    };
    Ket plus = candidate(+1.0);
    Ket minus = candidate(-1.0);
    const double aw_plus = std::abs(weak_value(psi_si, plus, a));
    const double aw_minus = std::abs(weak_value(psi_si, minus, a));
    return aw_plus >= aw_minus - 1e-12 ? plus : minus;
}

bool in_weak_regime(const WvaSetup &setup) {
    if (std::abs(inner(setup.psi_sf(), setup.psi_si())) < kOverlapFloor) {
        return false;
    }
    const Complex a_w = weak_value(setup.psi_si(), setup.psi_sf(), setup.a());
    return std::abs(setup.g()) * std::abs(a_w) * setup.omega() < kWeakRegimeLimit;
}

// ---------------------------------------------------------------------------

MixedWvaSetup::MixedWvaSetup(DensityMatrix rho_si, Ket psi_sf, Ket phi_mi, HermitianOperator a,
                             HermitianOperator m, double g)
    : rho_si_(std::move(rho_si)),
      psi_sf_(std::move(psi_sf)),
      phi_mi_(std::move(phi_mi)),
      a_(std::move(a)),
      m_(std::move(m)),
      g_(g),
      omega_(balanced_meter_omega(phi_mi_, m_)) {
    if (rho_si_.dim() != 2 || psi_sf_.dim() != 2 || a_.dim() != 2) {
        throw Error(ErrorKind::model_dimension, "system must be a qubit");
    }
}

MixedWvaSetup MixedWvaSetup::with_g(double g) const {
    MixedWvaSetup copy = *this;
    copy.g_ = g;
    return copy;
}

namespace {

struct Branches {
    std::vector<double> weights;
    std::vector<Amplitudes> meters;  // unnormalized
    double p = 0.0;
};

Branches postselected_branches(const MixedWvaSetup &setup) {
    const UnitaryOperator u = coupling_unitary(setup.a(), setup.m(), setup.g());
    const EigenSystem es = hermitian_eigs(setup.rho_si().as_hermitian());
    Branches b;
    for (std::size_t k = 0; k < es.values.size(); ++k) {
        const double w = std::max(es.values[k], 0.0);
        Amplitudes meter = collapsed_meter(es.vectors[k], setup.psi_sf(), setup.phi_mi(), u);
        b.p += w * inner(meter, meter).real();
        b.weights.push_back(w);
        b.meters.push_back(std::move(meter));
    }
    if (b.p < kPostselectionFloor) {
        throw Error(ErrorKind::vanishing_postselection, "postselection probability below floor");
    }
    return b;
}

}  // namespace

MixedPostselectionResult postselect_mixed(const MixedWvaSetup &setup) {
    const Branches b = postselected_branches(setup);
    ComplexMatrix rho(2);
    for (std::size_t k = 0; k < b.weights.size(); ++k) {
        rho += ComplexMatrix::outer(b.meters[k], b.meters[k]) * Complex(b.weights[k] / b.p);
    }
    ComplexMatrix sym = (rho + rho.adjoint()) * Complex(0.5);
    const Complex tr = sym.trace();
    sym *= 1.0 / tr.real();
    return {b.p, DensityMatrix(std::move(sym))};
}

Ket purified_postselected_state(const MixedWvaSetup &setup) {
    const Branches b = postselected_branches(setup);
    Amplitudes joint(4);
    for (std::size_t k = 0; k < 2; ++k) {
        const double amp = std::sqrt(b.weights[k] / b.p);
        for (std::size_t j = 0; j < 2; ++j) {
            joint[k * 2 + j] = amp * b.meters[k][j];
        }
    }
    return Ket(std::move(joint));
}

double fm_mixed_exact(const MixedWvaSetup &setup, double step) {
    return qfi_mixed([&](double g) { return postselect_mixed(setup.with_g(g)).rho_mf; }, setup.g(), step);
}

}  // namespace wva
