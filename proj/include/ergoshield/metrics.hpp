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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ergoshield/linalg.hpp"

namespace ergoshield {

/// Energies in the units of the Hamiltonian passed to ergotropy().
struct ErgotropyBreakdown {
    double total_energy = 0.0;
    double passive_energy = 0.0;
    double ergotropy = 0.0;
};

/// Work extractable by a cyclic unitary: Tr(rho H) minus the energy of the
/// passive state, which pairs populations sorted descending with energies
/// sorted ascending.
ErgotropyBreakdown ergotropy(const ComplexMatrix& rho, const ComplexMatrix& h);

/// Passive energy from pre-computed spectra; any input order is accepted.
double passive_energy(RealVector populations, RealVector energies);

/// 1/2 Tr|rho1 - rho2|.
double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

/// 1/2 Tr|delta| for an already formed Hermitian difference.
double half_trace_norm(const ComplexMatrix& delta);

struct BlpResult {
    double value = 0.0;
    std::vector<std::pair<double, double>> positive_intervals;
};

struct BlpOptions {
    /// Derivatives at or below this magnitude count as non-positive, so
    /// round-off in a contractive series does not register as backflow.
    double sigma_floor = 1e-10;
};

/// Information backflow of a trace-distance series on a uniform grid with an
/// odd number of points: integral of max(dD/dt, 0) by composite Simpson.
BlpResult blp_measure(std::span<const double> times, std::span<const double> distance,
                      const BlpOptions& options = {});

enum class ResidualMode { integrated, final_value, time_averaged };

/// "integrated", "final" or "time-averaged"; ConfigError otherwise.
ResidualMode parse_residual_mode(const std::string& text);
std::string to_string(ResidualMode mode);

/// Scalar summary of an ergotropy series. The integral is composite Simpson
/// on uniform odd-length grids and trapezoidal otherwise.
double residual_ergotropy(std::span<const double> times, std::span<const double> series,
                          ResidualMode mode);

/// E_N / (N E_1).
double collective_advantage(double e_n, double e_1, std::size_t n);

}  // namespace ergoshield
