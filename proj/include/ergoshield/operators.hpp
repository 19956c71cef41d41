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

#include <cstddef>
#include <vector>

#include "ergoshield/linalg.hpp"

namespace ergoshield {

enum class ModeKind { dicke, fock };

/// One tensor factor of the joint space. A Dicke mode of N qubits is the
/// symmetric J = N/2 ladder with states ordered M = J, J-1, ..., -J; a Fock
/// mode is a cavity truncated to `size` levels.
struct Mode {
    ModeKind kind;
    std::size_t size;  // qubit count for dicke, truncation for fock

    std::size_t dimension() const { return kind == ModeKind::dicke ? size + 1 : size; }
};

struct BasisDescriptor {
    std::vector<Mode> modes;

    static BasisDescriptor battery(std::size_t n_qubits);
    static BasisDescriptor battery_cavity(std::size_t n_qubits, std::size_t n_cav);

    std::size_t dimension() const;
    std::vector<std::size_t> dimensions() const;
};

struct CollectiveOps {
    ComplexMatrix jz;
    ComplexMatrix jplus;
    ComplexMatrix jminus;
};

struct CavityOps {
    ComplexMatrix a;
    ComplexMatrix adag;
    ComplexMatrix number;
};

/// Jz, J+ and J- on the symmetric ladder of `n_qubits` spins.
CollectiveOps collective_ops(std::size_t n_qubits);

/// Truncated ladder operators. The truncation makes [a, a^dagger] differ from
/// the identity in the last diagonal entry, which equals 1 - n_cav.
CavityOps cavity_ops(std::size_t n_cav);

/// |J = N/2, M = m> as a unit vector; m must be a valid projection for J.
ComplexVector dicke_state(std::size_t n_qubits, double m);

/// Embed a single-mode operator at `slot`, identity on every other mode.
ComplexMatrix lift(const ComplexMatrix& op, std::size_t slot, const BasisDescriptor& basis);

/// Tensor product of per-mode state vectors, in mode order.
ComplexVector product_state(const std::vector<ComplexVector>& factors);

}  // namespace ergoshield
