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

#include "ergoshield/operators.hpp"

#include <cmath>
#include <sstream>

namespace ergoshield {

BasisDescriptor BasisDescriptor::battery(std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw DomainError("basis: battery needs at least one qubit");
    }
    return BasisDescriptor{{Mode{ModeKind::dicke, n_qubits}}};
}

BasisDescriptor BasisDescriptor::battery_cavity(std::size_t n_qubits, std::size_t n_cav) {
    if (n_qubits == 0 || n_cav == 0) {
        throw DomainError("basis: every mode needs dimension >= 1");
    }
    return BasisDescriptor{{Mode{ModeKind::dicke, n_qubits}, Mode{ModeKind::fock, n_cav}}};
}

std::size_t BasisDescriptor::dimension() const {
    std::size_t d = 1;
    for (const auto& m : modes) {
        d *= m.dimension();
    }
    return d;
}

std::vector<std::size_t> BasisDescriptor::dimensions() const {
    std::vector<std::size_t> dims;
    dims.reserve(modes.size());
    for (const auto& m : modes) {
        dims.push_back(m.dimension());
    }
    return dims;
}

CollectiveOps collective_ops(std::size_t n_qubits) {
    if (n_qubits == 0) {
        throw DomainError("collective_ops: n_qubits must be >= 1");
    }
    const auto dim = static_cast<Eigen::Index>(n_qubits + 1);
    const double j = 0.5 * static_cast<double>(n_qubits);
    CollectiveOps ops;
    ops.jz = ComplexMatrix::Zero(dim, dim);
    ops.jminus = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double m = j - static_cast<double>(i);
        ops.jz(i, i) = m;
        if (i + 1 < dim) {
            // <J, M-1| J- |J, M>
            ops.jminus(i + 1, i) = std::sqrt(j * (j + 1.0) - m * (m - 1.0));
        }
    }
    ops.jplus = ops.jminus.adjoint();
    return ops;
}

CavityOps cavity_ops(std::size_t n_cav) {
    if (n_cav < 2) {
        throw DomainError("cavity_ops: n_cav must be >= 2");
    }
    const auto dim = static_cast<Eigen::Index>(n_cav);
    CavityOps ops;
    ops.a = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index n = 1; n < dim; ++n) {
        ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    ops.adag = ops.a.adjoint();
    ops.number = ops.adag * ops.a;
    return ops;
}

ComplexVector dicke_state(std::size_t n_qubits, double m) {
    if (n_qubits == 0) {
        throw DomainError("dicke_state: n_qubits must be >= 1");
    }
    const double j = 0.5 * static_cast<double>(n_qubits);
    const double steps = j - m;
    const double rounded = std::round(steps);
    if (!std::isfinite(m) || std::abs(m) > j + 1e-12 || std::abs(steps - rounded) > 1e-12) {
        std::ostringstream msg;
        msg << "dicke_state: m = " << m << " is not a projection of J = " << j;
        throw DomainError(msg.str());
    }
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(n_qubits + 1));
    psi(static_cast<Eigen::Index>(rounded)) = 1.0;
    return psi;
}

ComplexMatrix lift(const ComplexMatrix& op, std::size_t slot, const BasisDescriptor& basis) {
    if (slot >= basis.modes.size()) {
        throw ShapeError("lift: slot out of range");
    }
    const auto slot_dim = static_cast<Eigen::Index>(basis.modes[slot].dimension());
    if (op.rows() != slot_dim || op.cols() != slot_dim) {
        throw ShapeError("lift: operator dimension does not match the slot's mode");
    }
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (std::size_t s = 0; s < basis.modes.size(); ++s) {
        if (s == slot) {
            out = kron(out, op);
        } else {
            const auto d = static_cast<Eigen::Index>(basis.modes[s].dimension());
            out = kron(out, ComplexMatrix::Identity(d, d));
        }
    }
    return out;
}

ComplexVector product_state(const std::vector<ComplexVector>& factors) {
    if (factors.empty()) {
        throw ShapeError("product_state: no factors");
    }
    ComplexVector out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = kron(out, factors[k]);
    }
    return out;
}

}  // namespace ergoshield
