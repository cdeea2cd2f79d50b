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

#include "wva/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wva {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;
constexpr double kTraceTol = 1e-12;
constexpr double kEigenFloor = -1e-10;
constexpr double kJacobiTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kPhaseNonzero = 1e-9;

const Complex kI{0.0, 1.0};

void require_model_dim(std::size_t dim, const char *what) {
    if (dim != 2 && dim != 4) {
        throw Error(ErrorKind::model_dimension, std::string(what) + " must have dimension 2 or 4");
    }
}

void require_qubit(std::size_t dim, const char *what) {
    if (dim != 2) {
        throw Error(ErrorKind::model_dimension, std::string(what) + " must be a 2-dim factor");
    }
}

double scale_of(const ComplexMatrix &m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            s = std::max(s, std::abs(m(i, j)));
        }
    }
    return std::max(1.0, s);
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    if (data_.size() != dim_ * dim_) {
        throw Error(ErrorKind::contract_violation, "matrix data does not match dimension");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw Error(ErrorKind::contract_violation, "matrix rows must form a square");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::model_dimension, "outer product of mismatched vectors");
    }
    ComplexMatrix m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            m(i, j) = a[i] * std::conj(b[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(i, j) = std::conj((*this)(j, i));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &other) const {
    if (other.dim_ != dim_) {
        throw Error(ErrorKind::model_dimension, "comparing matrices of different dimension");
    }
    double d = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) {
        d = std::max(d, std::abs(data_[k] - other.data_[k]));
    }
    return d;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &rhs) {
    if (rhs.dim_ != dim_) {
        throw Error(ErrorKind::model_dimension, "adding matrices of different dimension");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] += rhs.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &rhs) {
    if (rhs.dim_ != dim_) {
        throw Error(ErrorKind::model_dimension, "subtracting matrices of different dimension");
    }
    for (std::size_t k = 0; k < data_.size(); ++k) {
        data_[k] -= rhs.data_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
    for (auto &x : data_) {
        x *= s;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim_ != b.dim_) {
        throw Error(ErrorKind::model_dimension, "multiplying matrices of different dimension");
    }
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Amplitudes ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != dim_) {
        throw Error(ErrorKind::model_dimension, "operator and vector dimensions differ");
    }
    Amplitudes out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out[i] += (*this)(i, j) * v[j];
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ket

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::model_dimension, "inner product of kets with different dimension");
    }
    Complex s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

double norm(std::span<const Complex> v) {
    double s = 0.0;
    for (const auto &c : v) {
        s += std::norm(c);
    }
    return std::sqrt(s);
}

Ket::Ket(std::initializer_list<Complex> amplitudes) : Ket(Amplitudes(amplitudes)) {
}

Ket::Ket(Amplitudes amplitudes) : amps_(std::move(amplitudes)) {
    require_model_dim(amps_.size(), "ket");
    const double n = norm(amps_);
    if (!(n > 1e-300) || !std::isfinite(n)) {
        throw Error(ErrorKind::contract_violation, "ket has zero or non-finite norm");
    }
    for (auto &c : amps_) {
        c /= n;
    }
}

Ket Ket::canonical_phase() const {
    for (const auto &c : amps_) {
        if (std::abs(c) > kPhaseNonzero) {
            const Complex phase = std::conj(c) / std::abs(c);
            Amplitudes out = amps_;
            for (auto &x : out) {
                x *= phase;
            }
            return Ket(std::move(out));
        }
    }
    return *this;
}

// ---------------------------------------------------------------------------
// Operators and states

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_hermitian(kHermitianTol * scale_of(m_))) {
        throw Error(ErrorKind::contract_violation, "operator is not Hermitian");
    }
}

double HermitianOperator::expectation(const Ket &psi) const {
    return inner(psi.amplitudes(), m_.apply(psi.amplitudes())).real();
}

HermitianOperator HermitianOperator::squared() const {
    ComplexMatrix sq = m_ * m_;
    // Hermitian up to rounding; symmetrize so the invariant check holds exactly.
    ComplexMatrix sym = (sq + sq.adjoint()) * Complex(0.5);
    return HermitianOperator(std::move(sym));
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : m_(std::move(m)) {
    const ComplexMatrix prod = m_ * m_.adjoint();
    if (prod.max_abs_diff(ComplexMatrix::identity(m_.dim())) > kUnitaryTol) {
        throw Error(ErrorKind::contract_violation, "operator is not unitary");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    require_model_dim(m_.dim(), "density matrix");
    if (!m_.is_hermitian(kHermitianTol)) {
        throw Error(ErrorKind::contract_violation, "density matrix is not Hermitian");
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        throw Error(ErrorKind::contract_violation, "density matrix trace differs from 1");
    }
    const EigenSystem es = hermitian_eigs(HermitianOperator(m_));
    if (es.values.back() < kEigenFloor) {
        throw Error(ErrorKind::contract_violation, "density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const Ket &psi) {
    return DensityMatrix(ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()));
}

double DensityMatrix::purity() const {
    return (m_ * m_).trace().real();
}

double BlochVector::norm() const {
    return std::sqrt(dot(*this));
}

// ---------------------------------------------------------------------------
// Reference basis

ReferenceBasis::ReferenceBasis(Ket ket0, Ket ket1) : ket0_(std::move(ket0)), ket1_(std::move(ket1)) {
    require_qubit(ket0_.dim(), "reference basis ket");
    require_qubit(ket1_.dim(), "reference basis ket");
    if (std::abs(inner(ket0_, ket1_)) > 1e-12) {
        throw Error(ErrorKind::contract_violation, "reference basis kets are not orthogonal");
    }
}

ReferenceBasis ReferenceBasis::computational() {
    return ReferenceBasis(Ket{1.0, 0.0}, Ket{0.0, 1.0});
}

ReferenceBasis ReferenceBasis::sigma_y_eigenbasis() {
    return ReferenceBasis(Ket{1.0, kI}, Ket{1.0, -kI});
}

Ket ReferenceBasis::real_superposition(double t) const {
    Amplitudes a(2);
    for (std::size_t k = 0; k < 2; ++k) {
        a[k] = std::cos(t) * ket0_[k] + std::sin(t) * ket1_[k];
    }
    return Ket(std::move(a));
}

HermitianOperator ReferenceBasis::sigma() const {
    return pauli_triple()[2];
}

std::array<HermitianOperator, 3> ReferenceBasis::pauli_triple() const {
    const auto a = ket0_.amplitudes();
    const auto b = ket1_.amplitudes();
    const ComplexMatrix p00 = ComplexMatrix::outer(a, a);
    const ComplexMatrix p11 = ComplexMatrix::outer(b, b);
    const ComplexMatrix p01 = ComplexMatrix::outer(a, b);
    const ComplexMatrix p10 = ComplexMatrix::outer(b, a);
    return {HermitianOperator(p01 + p10), HermitianOperator(-kI * p01 + kI * p10),
            HermitianOperator(p00 - p11)};
}

ComplexMatrix ReferenceBasis::coordinates(const DensityMatrix &rho) const {
    require_qubit(rho.dim(), "density matrix");
    const Ket *kets[2] = {&ket0_, &ket1_};
    ComplexMatrix c(2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            c(i, j) = inner(kets[i]->amplitudes(), rho.matrix().apply(kets[j]->amplitudes()));
        }
    }
    return c;
}

HermitianOperator pauli_x() {
    return HermitianOperator{{0.0, 1.0}, {1.0, 0.0}};
}

HermitianOperator pauli_y() {
    return HermitianOperator{{0.0, -kI}, {kI, 0.0}};
}

HermitianOperator pauli_z() {
    return HermitianOperator{{1.0, 0.0}, {0.0, -1.0}};
}

// ---------------------------------------------------------------------------
// Products and the coupling unitary

Ket tensor(const Ket &a, const Ket &b) {
    require_qubit(a.dim(), "tensor factor");
    require_qubit(b.dim(), "tensor factor");
    Amplitudes out(4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            out[i * 2 + j] = a[i] * b[j];
        }
    }
    return Ket(std::move(out));
}

HermitianOperator tensor(const HermitianOperator &a, const HermitianOperator &b) {
    require_qubit(a.dim(), "tensor factor");
    require_qubit(b.dim(), "tensor factor");
    return HermitianOperator(kron(a.matrix(), b.matrix()));
}

UnitaryOperator coupling_unitary(const HermitianOperator &a, const HermitianOperator &m, double g) {
    const HermitianOperator h = tensor(a, m);
    const EigenSystem es = hermitian_eigs(h);
    ComplexMatrix u(4);
    for (std::size_t k = 0; k < es.values.size(); ++k) {
        const Complex phase = std::exp(-kI * g * es.values[k]);
        u += ComplexMatrix::outer(es.vectors[k].amplitudes(), es.vectors[k].amplitudes()) * phase;
    }

    // Involutory generators also admit cos(g) I - i sin(g) H.
    const ComplexMatrix h2 = h.matrix() * h.matrix();
    if (h2.max_abs_diff(ComplexMatrix::identity(4)) <= 1e-12) {
        const ComplexMatrix closed =
            ComplexMatrix::identity(4) * Complex(std::cos(g)) - h.matrix() * (kI * std::sin(g));
        if (closed.max_abs_diff(u) > 1e-10) {
            throw Error(ErrorKind::numerical_failure, "coupling unitary failed the involutory cross-check");
        }
    }
    return UnitaryOperator(std::move(u));
}

// ---------------------------------------------------------------------------
// Bloch geometry

BlochVector bloch_of(const Ket &psi, const ReferenceBasis &basis) {
    require_qubit(psi.dim(), "Bloch ket");
    const Complex c0 = inner(basis.ket0(), psi);
    const Complex c1 = inner(basis.ket1(), psi);
    const Complex z = std::conj(c0) * c1;
    return {2.0 * z.real(), 2.0 * z.imag(), std::norm(c0) - std::norm(c1)};
}

Ket ket_from_bloch(const BlochVector &r, const ReferenceBasis &basis) {
    if (std::abs(r.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::contract_violation, "only unit Bloch vectors map to kets");
    }
    const double polar = std::acos(std::clamp(r.r3, -1.0, 1.0));
    const double azimuth = std::atan2(r.r2, r.r1);
    const Complex c0 = std::cos(polar / 2.0);
    const Complex c1 = std::polar(std::sin(polar / 2.0), azimuth);
    Amplitudes a(2);
    for (std::size_t k = 0; k < 2; ++k) {
        a[k] = c0 * basis.ket0()[k] + c1 * basis.ket1()[k];
    }
    return Ket(std::move(a)).canonical_phase();
}

double overlap_sq(const Ket &a, const Ket &b) {
    return std::clamp(std::norm(inner(a, b)), 0.0, 1.0);
}

double bloch_angle(const BlochVector &ra, const BlochVector &rb) {
    if (std::abs(ra.norm() - 1.0) > 1e-10 || std::abs(rb.norm() - 1.0) > 1e-10) {
        throw Error(ErrorKind::contract_violation, "bloch_angle needs unit vectors");
    }
    return std::acos(std::clamp(ra.dot(rb), -1.0, 1.0));
}

// ---------------------------------------------------------------------------
// Eigensolver

namespace {

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

// Orders kets lexicographically, larger (real, imag) components first.
bool lexicographically_before(const Ket &a, const Ket &b) {
    for (std::size_t k = 0; k < a.dim(); ++k) {
        const double dr = a[k].real() - b[k].real();
        if (std::abs(dr) > 1e-9) {
            return dr > 0;
        }
        const double di = a[k].imag() - b[k].imag();
        if (std::abs(di) > 1e-9) {
            return di > 0;
        }
    }
    return false;
}

}  // namespace

EigenSystem hermitian_eigs(const HermitianOperator &h) {
    const std::size_t n = h.dim();
    require_model_dim(n, "eigensolver input");
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double threshold = kJacobiTol * scale_of(a);

    int sweep = 0;
    for (; sweep < kJacobiMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag < 1e-300) {
                    continue;
                }
                // Phase q so that a_pq turns real, then a real Jacobi rotation.
                const Complex phase = a(p, q) / mag;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                ComplexMatrix j = ComplexMatrix::identity(n);
                j(p, p) = c;
                j(p, q) = s;
                j(q, p) = -s * std::conj(phase);
                j(q, q) = c * std::conj(phase);
                a = j.adjoint() * a * j;
                v = v * j;
            }
        }
    }
    if (off_diagonal_norm(a) > threshold) {
        throw Error(ErrorKind::numerical_failure, "Jacobi eigensolver did not converge");
    }

    std::vector<std::pair<double, Ket>> pairs;
    pairs.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Amplitudes col(n);
        for (std::size_t i = 0; i < n; ++i) {
            col[i] = v(i, k);
        }
        pairs.emplace_back(a(k, k).real(), Ket(std::move(col)).canonical_phase());
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto &x, const auto &y) {
        if (std::abs(x.first - y.first) > 1e-9) {
            return x.first > y.first;
        }
        return lexicographically_before(x.second, y.second);
    });

    EigenSystem out;
    for (auto &[value, vec] : pairs) {
        out.values.push_back(value);
        out.vectors.push_back(std::move(vec));
    }
    return out;
}

DensityMatrix partial_trace_first(const DensityMatrix &rho) {
    if (rho.dim() != 4) {
        throw Error(ErrorKind::model_dimension, "partial trace needs a 4-dim product state");
    }
    ComplexMatrix out(2);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t s = 0; s < 2; ++s) {
                out(a, b) += rho(s * 2 + a, s * 2 + b);
            }
        }
    }
    return DensityMatrix(std::move(out));
}

}  // namespace wva
