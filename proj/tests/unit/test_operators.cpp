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

#include <doctest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "ergoshield/operators.hpp"
#include "test_support.hpp"

using namespace ergoshield;
using namespace ergoshield::testing;

namespace {

// Independent construction on the full 2^N space: sum of single-site operators,
// then projection onto the symmetric Dicke basis built from normalized
// equal-weight superpositions of fixed-excitation bit strings.
ComplexMatrix site_sum(std::size_t n, const ComplexMatrix& single) {
    const Eigen::Index full = Eigen::Index{1} << n;
    ComplexMatrix total = ComplexMatrix::Zero(full, full);
    for (std::size_t site = 0; site < n; ++site) {
        ComplexMatrix term = ComplexMatrix::Identity(1, 1);
        for (std::size_t s = 0; s < n; ++s) {
            term = kron(term, s == site ? single : ComplexMatrix::Identity(2, 2));
        }
        total += term;
    }
    return total;
}

// Column k is |J, J-k>: k de-excited sites, so popcount of ground bits = k.
ComplexMatrix symmetric_isometry(std::size_t n) {
    const Eigen::Index full = Eigen::Index{1} << n;
    ComplexMatrix v = ComplexMatrix::Zero(full, static_cast<Eigen::Index>(n + 1));
    for (Eigen::Index idx = 0; idx < full; ++idx) {
        // Local basis (|e>, |g>): bit 1 marks the ground level.
        const int ground = std::popcount(static_cast<unsigned long long>(idx));
        v(idx, ground) = 1.0;
    }
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        v.col(k).normalize();
    }
    return v;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("collective ladder for N = 1 is sigma_z / 2 and sigma_-") {
    const CollectiveOps ops = collective_ops(1);
    CHECK(max_abs(ops.jz - 0.5 * pauli_z()) == 0.0);
    CHECK(max_abs(ops.jminus - sigma_minus()) < 1e-15);
    CHECK(max_abs(ops.jplus - sigma_minus().adjoint()) < 1e-15);
}

TEST_CASE("collective operators match the symmetric sector of the tensor space") {
    for (std::size_t n = 1; n <= 6; ++n) {
        CAPTURE(n);
        const ComplexMatrix v = symmetric_isometry(n);
        const ComplexMatrix jz_full = 0.5 * site_sum(n, pauli_z());
        const ComplexMatrix jm_full = site_sum(n, sigma_minus());
        const CollectiveOps ops = collective_ops(n);
        CHECK(max_abs(v.adjoint() * jz_full * v - ops.jz) < 1e-12);
        CHECK(max_abs(v.adjoint() * jm_full * v - ops.jminus) < 1e-12);
        // The symmetric subspace is invariant.
        CHECK(max_abs(jm_full * v - v * ops.jminus) < 1e-12);
    }
}

TEST_CASE("su(2) algebra and Casimir") {
    for (std::size_t n = 1; n <= 8; ++n) {
        CAPTURE(n);
        const CollectiveOps ops = collective_ops(n);
        const double j = 0.5 * static_cast<double>(n);
        CHECK(max_abs(commutator(ops.jplus, ops.jminus) - 2.0 * ops.jz) < 1e-12);
        CHECK(max_abs(commutator(ops.jz, ops.jplus) - ops.jplus) < 1e-12);
        CHECK(max_abs(commutator(ops.jz, ops.jminus) + ops.jminus) < 1e-12);
        const ComplexMatrix jx = 0.5 * (ops.jplus + ops.jminus);
        const ComplexMatrix jy = Complex(0.0, -0.5) * (ops.jplus - ops.jminus);
        const ComplexMatrix casimir = jx * jx + jy * jy + ops.jz * ops.jz;
        const auto dim = static_cast<Eigen::Index>(n + 1);
        CHECK(max_abs(casimir - j * (j + 1.0) * ComplexMatrix::Identity(dim, dim)) < 1e-11);
        CHECK(max_abs(ops.jplus - ops.jminus.adjoint()) == 0.0);
        CHECK(hermiticity_deviation(ops.jz) == 0.0);
    }
}

TEST_CASE("collective ladder rejects zero qubits") {
    CHECK_THROWS_AS(collective_ops(0), DomainError);
}

TEST_CASE("cavity ladder") {
    const CavityOps c = cavity_ops(6);
    for (Eigen::Index n = 0; n < 6; ++n) {
        CHECK(c.number(n, n).real() == doctest::Approx(static_cast<double>(n)));
    }
    const ComplexMatrix comm = commutator(c.a, c.adag);
    // Identity except the truncation corner.
    for (Eigen::Index n = 0; n < 5; ++n) {
        CHECK(comm(n, n).real() == doctest::Approx(1.0));
    }
    CHECK(comm(5, 5).real() == doctest::Approx(-5.0));
    CHECK_THROWS_AS(cavity_ops(1), DomainError);
    CHECK_THROWS_AS(cavity_ops(0), DomainError);
}

TEST_CASE("Dicke states") {
    const CollectiveOps ops = collective_ops(3);
    for (double m : {1.5, 0.5, -0.5, -1.5}) {
        const ComplexVector psi = dicke_state(3, m);
        CHECK(psi.norm() == doctest::Approx(1.0));
        CHECK(max_abs(ops.jz * psi - m * psi) < 1e-15);
    }
    CHECK(std::abs(dicke_state(4, 2.0)(0) - Complex(1.0)) == 0.0);
    CHECK(std::abs(dicke_state(4, -2.0)(4) - Complex(1.0)) == 0.0);
    CHECK_THROWS_AS(dicke_state(3, 1.0), DomainError);
    CHECK_THROWS_AS(dicke_state(3, 2.5), DomainError);
    CHECK_THROWS_AS(dicke_state(0, 0.0), DomainError);
}

TEST_CASE("basis descriptors") {
    const BasisDescriptor b = BasisDescriptor::battery(4);
    CHECK(b.dimension() == 5);
    const BasisDescriptor bc = BasisDescriptor::battery_cavity(3, 6);
    CHECK(bc.dimension() == 24);
    CHECK(bc.dimensions() == std::vector<std::size_t>{4, 6});
    CHECK_THROWS_AS(BasisDescriptor::battery(0), DomainError);
}

TEST_CASE("lift embeds operators by slot") {
    const BasisDescriptor bc = BasisDescriptor::battery_cavity(2, 3);
    const CollectiveOps ops = collective_ops(2);
    const CavityOps cav = cavity_ops(3);
    const ComplexMatrix jz = lift(ops.jz, 0, bc);
    const ComplexMatrix a = lift(cav.a, 1, bc);
    CHECK(max_abs(jz - kron(ops.jz, ComplexMatrix::Identity(3, 3))) == 0.0);
    CHECK(max_abs(a - kron(ComplexMatrix::Identity(3, 3), cav.a)) == 0.0);
    // Operators on different slots commute.
    CHECK(max_abs(commutator(jz, a)) < 1e-15);
    CHECK_THROWS_AS(lift(ops.jz, 2, bc), ShapeError);
    CHECK_THROWS_AS(lift(cavity_ops(4).a, 0, bc), ShapeError);
}

TEST_CASE("product states") {
    const ComplexVector up = dicke_state(1, 0.5);
    ComplexVector vac = ComplexVector::Zero(3);
    vac(0) = 1.0;
    const ComplexVector psi = product_state({up, vac});
    CHECK(psi.size() == 6);
    CHECK(std::abs(psi(0) - Complex(1.0)) == 0.0);
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK_THROWS_AS(product_state({}), ShapeError);
}

}
