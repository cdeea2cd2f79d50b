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

#ifndef WVA_QUANTUM_HPP
#define WVA_QUANTUM_HPP

// Exact complex linear algebra for the 2-dim system/meter qubits and their
// 4-dim product space. Product basis is system-major, meter-minor:
// (s0 m0, s0 m1, s1 m0, s1 m1).

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "wva/error.hpp"

namespace wva {

using Complex = std::complex<double>;

/// Raw amplitude vector. Only used for unnormalized intermediates.
using Amplitudes = std::vector<Complex>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

    std::size_t dim() const noexcept {
        return dim_;
    }
    Complex &operator()(std::size_t i, std::size_t j) {
        return data_[i * dim_ + j];
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return data_[i * dim_ + j];
    }

    ComplexMatrix adjoint() const;
    Complex trace() const;
    /// max_ij |a_ij - b_ij|
    double max_abs_diff(const ComplexMatrix &other) const;
    bool is_hermitian(double tol) const;

    ComplexMatrix &operator+=(const ComplexMatrix &rhs);
    ComplexMatrix &operator-=(const ComplexMatrix &rhs);
    ComplexMatrix &operator*=(Complex s);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        return a *= s;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        return a *= s;
    }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

    Amplitudes apply(std::span<const Complex> v) const;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Unit-norm state vector of dimension 2 or 4. Constructors normalize.
class Ket {
   public:
    Ket(std::initializer_list<Complex> amplitudes);
    explicit Ket(Amplitudes amplitudes);

    std::size_t dim() const noexcept {
        return amps_.size();
    }
    const Complex &operator[](std::size_t k) const {
        return amps_[k];
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amps_;
    }
    /// Copy with the first nonzero amplitude made real-positive.
    Ket canonical_phase() const;

   private:
    Amplitudes amps_;
};

Complex inner(std::span<const Complex> a, std::span<const Complex> b);
inline Complex inner(const Ket &a, const Ket &b) {
    return inner(a.amplitudes(), b.amplitudes());
}
double norm(std::span<const Complex> v);

class HermitianOperator {
   public:
    explicit HermitianOperator(ComplexMatrix m);
    HermitianOperator(std::initializer_list<std::initializer_list<Complex>> rows)
        : HermitianOperator(ComplexMatrix(rows)) {
    }

    std::size_t dim() const noexcept {
        return m_.dim();
    }
    const ComplexMatrix &matrix() const noexcept {
        return m_;
    }
    /// <psi|H|psi>, real by hermiticity.
    double expectation(const Ket &psi) const;
    HermitianOperator squared() const;

   private:
    ComplexMatrix m_;
};

class UnitaryOperator {
   public:
    explicit UnitaryOperator(ComplexMatrix m);

    std::size_t dim() const noexcept {
        return m_.dim();
    }
    const ComplexMatrix &matrix() const noexcept {
        return m_;
    }
    Amplitudes apply(const Ket &psi) const {
        return m_.apply(psi.amplitudes());
    }

   private:
    ComplexMatrix m_;
};

class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix m);
    static DensityMatrix pure(const Ket &psi);

    std::size_t dim() const noexcept {
        return m_.dim();
    }
    const ComplexMatrix &matrix() const noexcept {
        return m_;
    }
    const Complex &operator()(std::size_t i, std::size_t j) const {
        return m_(i, j);
    }
    double purity() const;
    HermitianOperator as_hermitian() const {
        return HermitianOperator(m_);
    }

   private:
    ComplexMatrix m_;
};

struct BlochVector {
    double r1 = 0.0;
    double r2 = 0.0;
    double r3 = 0.0;

    double norm() const;
    double dot(const BlochVector &o) const {
        return r1 * o.r1 + r2 * o.r2 + r3 * o.r3;
    }
};

/// Orthonormal eigenbasis {|0~>, |1~>} of sigma, eigenvalues +1 and -1.
class ReferenceBasis {
   public:
    ReferenceBasis(Ket ket0, Ket ket1);

    /// Standard basis; sigma = diag(1, -1).
    static ReferenceBasis computational();
    /// (|H> + i|V>)/sqrt2, (|H> - i|V>)/sqrt2: eigenbasis of the standard sigma_y.
    static ReferenceBasis sigma_y_eigenbasis();

    const Ket &ket0() const noexcept {
        return ket0_;
    }
    const Ket &ket1() const noexcept {
        return ket1_;
    }
    /// cos(t)|0~> + sin(t)|1~>
    Ket real_superposition(double t) const;
    /// |0~><0~| - |1~><1~|
    HermitianOperator sigma() const;
    /// Right-handed Pauli triple (sigma_1, sigma_2, sigma_3) in this basis.
    std::array<HermitianOperator, 3> pauli_triple() const;
    /// Matrix elements <i~|rho|j~>.
    ComplexMatrix coordinates(const DensityMatrix &rho) const;

   private:
    Ket ket0_;
    Ket ket1_;
};

HermitianOperator pauli_x();
HermitianOperator pauli_y();
HermitianOperator pauli_z();

Ket tensor(const Ket &a, const Ket &b);
HermitianOperator tensor(const HermitianOperator &a, const HermitianOperator &b);

/// exp(-i g A (x) M) by eigendecomposition of A (x) M.
UnitaryOperator coupling_unitary(const HermitianOperator &a, const HermitianOperator &m, double g);

BlochVector bloch_of(const Ket &psi, const ReferenceBasis &basis);
/// Ket with the given Bloch vector (unit norm required), canonical phase.
Ket ket_from_bloch(const BlochVector &r, const ReferenceBasis &basis);

double overlap_sq(const Ket &a, const Ket &b);
double bloch_angle(const BlochVector &ra, const BlochVector &rb);

struct EigenSystem {
    std::vector<double> values;  // descending
    std::vector<Ket> vectors;    // orthonormal, first nonzero amplitude real-positive
};

/// Cyclic complex Jacobi; dims 2 and 4.
EigenSystem hermitian_eigs(const HermitianOperator &h);

/// Trace over the first (system-major) factor of a 4-dim product operator.
DensityMatrix partial_trace_first(const DensityMatrix &rho);

}  // namespace wva

#endif
