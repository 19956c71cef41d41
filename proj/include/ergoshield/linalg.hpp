// Copyright 2026 The ErgoShield Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ergoshield/errors.hpp"

namespace ergoshield {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical gates shared by the kernel and the integrator.
struct Tolerances {
    static constexpr double hermiticity = 1e-9;
    static constexpr double reconstruction = 1e-10;
    static constexpr double expectation_imag = 1e-10;
    static constexpr double trace_drift = 1e-8;
    static constexpr double hermiticity_drift = 1e-8;
    static constexpr double positivity_floor = -1e-7;
};

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Kronecker product with (A (x) B)(i*p + k, j*q + l) = A(i,j) * B(k,l).
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
    using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.size() == 0 || b.size() == 0) {
        throw ShapeError("kron: empty operand");
    }
    const Eigen::Index p = b.rows();
    const Eigen::Index q = b.cols();
    Result out(a.rows() * p, a.cols() * q);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * p, j * q, p, q) = a(i, j) * b.template cast<typename DerivedA::Scalar>();
        }
    }
    return out;
}

/// Largest entrywise |A - A^dagger|; infinity for non-square input.
double hermiticity_deviation(const ComplexMatrix& a);

/// Eigendecomposition of a Hermitian matrix. Throws HermiticityError when
/// the input deviates from Hermitian by more than Tolerances::hermiticity.
Spectrum herm_eig(const ComplexMatrix& a);

/// Eigenvalues only, same gate and ordering as herm_eig.
RealVector herm_eigenvalues(const ComplexMatrix& a);

/// Reduced operator over the subsystems listed in `keep`. Kept subsystems
/// appear in ascending index order in the result regardless of the order
/// given.
ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Re Tr(op * rho); throws if the imaginary residue exceeds
/// Tolerances::expectation_imag.
double expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

/// |psi><psi|
ComplexMatrix projector(const ComplexVector& psi);

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

}  // namespace ergoshield
