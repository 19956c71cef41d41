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

#include "ergoshield/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ergoshield {

namespace {

void require_hermitian(const ComplexMatrix& a, const char* who) {
    const double dev = hermiticity_deviation(a);
    if (!(dev <= Tolerances::hermiticity)) {
        std::ostringstream msg;
        msg << who << ": input is not Hermitian (max deviation " << dev << ")";
        throw HermiticityError(msg.str(), dev);
    }
}

// Ascending order with index tiebreak so equal eigenvalues never reorder.
std::vector<Eigen::Index> ascending_order(const RealVector& values) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index l, Eigen::Index r) { return values(l) < values(r); });
    return order;
}

}  // namespace

double hermiticity_deviation(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum herm_eig(const ComplexMatrix& a) {
    if (a.rows() != a.cols() || a.size() == 0) {
        throw ShapeError("herm_eig: matrix must be square and non-empty");
    }
    require_hermitian(a, "herm_eig");
    // Symmetrize so round-off asymmetry below the gate cannot leak into the solver.
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw DomainError("herm_eig: eigensolver did not converge");
    }
    const auto order = ascending_order(solver.eigenvalues());
    Spectrum out;
    out.eigenvalues.resize(a.rows());
    out.eigenvectors.resize(a.rows(), a.cols());
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto idx = static_cast<Eigen::Index>(k);
        out.eigenvalues(idx) = solver.eigenvalues()(order[k]);
        out.eigenvectors.col(idx) = solver.eigenvectors().col(order[k]);
    }
    return out;
}

RealVector herm_eigenvalues(const ComplexMatrix& a) {
    if (a.rows() != a.cols() || a.size() == 0) {
        throw ShapeError("herm_eigenvalues: matrix must be square and non-empty");
    }
    require_hermitian(a, "herm_eigenvalues");
    const ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw DomainError("herm_eigenvalues: eigensolver did not converge");
    }
    RealVector values = solver.eigenvalues();
    std::sort(values.begin(), values.end());
    return values;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
    if (dims.empty() || keep.empty()) {
        throw ShapeError("partial_trace: empty subsystem list");
    }
    std::size_t total = 1;
    for (auto d : dims) {
        if (d == 0) {
            throw ShapeError("partial_trace: zero subsystem dimension");
        }
        total *= d;
    }
    if (rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != total) {
        throw ShapeError("partial_trace: product of subsystem dimensions does not match matrix");
    }
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size()) {
            throw ShapeError("partial_trace: kept subsystem index out of range");
        }
        kept[k] = true;
    }

    // Row-major mixed-radix digits; the last subsystem varies fastest.
    const std::size_t n = dims.size();
    std::size_t kept_dim = 1;
    for (std::size_t s = 0; s < n; ++s) {
        if (kept[s]) {
            kept_dim *= dims[s];
        }
    }
    std::vector<std::size_t> kept_index(total);
    std::vector<std::size_t> traced_index(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        std::size_t k_idx = 0;
        std::size_t k_stride = 1;
        std::size_t t_idx = 0;
        std::size_t t_stride = 1;
        for (std::size_t s = n; s-- > 0;) {
            const std::size_t digit = rem % dims[s];
            rem /= dims[s];
            if (kept[s]) {
                k_idx += digit * k_stride;
                k_stride *= dims[s];
            } else {
                t_idx += digit * t_stride;
                t_stride *= dims[s];
            }
        }
        kept_index[idx] = k_idx;
        traced_index[idx] = t_idx;
    }

    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kept_dim),
                                            static_cast<Eigen::Index>(kept_dim));
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) {
            if (traced_index[r] == traced_index[c]) {
                out(static_cast<Eigen::Index>(kept_index[r]), static_cast<Eigen::Index>(kept_index[c])) +=
                    rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return out;
}

double expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
    if (op.rows() != op.cols() || rho.rows() != rho.cols() || op.rows() != rho.rows()) {
        throw ShapeError("expectation: operator and state dimensions differ");
    }
    // Tr(A B) = sum_ij A_ij B_ji without forming the product.
    const Complex value = op.cwiseProduct(rho.transpose()).sum();
    if (std::abs(value.imag()) > Tolerances::expectation_imag) {
        std::ostringstream msg;
        msg << "expectation: imaginary residue " << value.imag() << " exceeds tolerance";
        throw DomainError(msg.str());
    }
    return value.real();
}

ComplexMatrix projector(const ComplexVector& psi) {
    return psi * psi.adjoint();
}

}  // namespace ergoshield
