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

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ergoshield/environment.hpp"
#include "ergoshield/linalg.hpp"
#include "ergoshield/operators.hpp"

namespace ergoshield {

enum class Representation { reduced, full_cavity };

/// Physical constants of one battery(+cavity) configuration, natural units.
struct SystemSpec {
    std::size_t n_qubits = 1;
    double omega_b = 1.0;
    double delta = 0.0;  // cavity detuning, omega_c = omega_b + delta
    double g = 0.1;
    double gamma0 = 0.05;
    double kappa = 1.0;
    std::optional<double> eta;  // spectral prefactor; tracks gamma0 when unset
    double omega_cut = 5.0;
    std::size_t n_cav = 6;
    Representation representation = Representation::reduced;

    double effective_eta() const { return eta.value_or(gamma0); }
    double cavity_frequency() const { return omega_b + delta; }

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// A Lindblad channel: rate(t) * (L rho L^dagger - 1/2 {L^dagger L, rho}).
struct Dissipator {
    ComplexMatrix op;
    std::function<double(double)> rate;
    std::string label;
    bool constant = false;  // rate(t) never changes; lets evolve cache propagators
};

/// Frequency shift offset(step, t) * op added to the Hamiltonian. It is
/// evaluated once per step at the step's start time and held across all
/// Runge-Kutta stages, which suits piecewise-constant noise.
struct FrequencyChannel {
    ComplexMatrix op;
    std::function<double(std::size_t, double)> offset;
};

struct Generator {
    ComplexMatrix hamiltonian;
    std::optional<FrequencyChannel> modulation;
    std::vector<Dissipator> dissipators;
    BasisDescriptor basis;

    ComplexMatrix hamiltonian_at(std::size_t step, double t) const;
};

/// g sqrt(N / (2 gamma0)).
double delta_star(std::size_t n_qubits, double g, double gamma0);

/// Stationary filtered rate eta wc^2 / (wc^2 + delta^2).
double filtered_rate(double delta, double eta, double omega_cut);

/// Ohmic density eta w exp(-w / wc).
double ohmic_density(double omega, double eta, double omega_cut);

/// Lorentzian-filtered density kappa J(w) / ((w - delta)^2 + kappa^2).
double effective_spectral_density(double omega, double delta, double kappa,
                                  const std::function<double(double)>& j_bare);

/// Assemble the master-equation generator. With `filter_on` false the
/// detuning is treated as zero everywhere.
Generator build_generator(const SystemSpec& spec, const EnvironmentSpec& env, bool filter_on);

/// Hamiltonian whose ergotropy is reported, omega_b Jz on the battery mode.
ComplexMatrix battery_hamiltonian(const SystemSpec& spec);

/// Roots of lambda^2 - (delta - i gamma0/2) lambda - omega_eff^2 = 0 for the
/// two-level bright-state/cavity problem. The battery branch is the root
/// that vanishes as omega_eff -> 0.
struct NonHermitianRoots {
    Complex battery;
    Complex cavity;
};
NonHermitianRoots nonhermitian_eigenvalues(double omega_eff, double delta, double gamma0);

/// Dispersive superradiant rate gamma0 g^2 N / delta^2.
double dispersive_decay_rate(double g, std::size_t n_qubits, double delta, double gamma0);

}  // namespace ergoshield
