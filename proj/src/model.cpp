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

#include "ergoshield/model.hpp"

#include <cmath>
#include <sstream>

namespace ergoshield {

namespace {

void require_finite(double value, const char* key) {
    if (!std::isfinite(value)) {
        throw ConfigError(key, "must be finite");
    }
}

}  // namespace

double ThermalDrive::occupation(double t) const {
    const double s = std::sin(omega_drive * t);
    return n0 * (1.0 + s * s);
}

std::string environment_tag(const EnvironmentSpec& env) {
    struct Visitor {
        std::string operator()(const NoEnvironment&) const { return "none"; }
        std::string operator()(const TelegraphNoise&) const { return "A"; }
        std::string operator()(const ThermalDrive&) const { return "B"; }
    };
    return std::visit(Visitor{}, env);
}

void validate(const EnvironmentSpec& env) {
    if (const auto* a = std::get_if<TelegraphNoise>(&env)) {
        require_finite(a->lambda_switch, "environment.lambda");
        require_finite(a->delta_amp, "environment.delta_amp");
        if (!(a->lambda_switch > 0.0)) {
            throw ConfigError("environment.lambda", "switching rate must be > 0");
        }
        if (a->n_traj < 1) {
            throw ConfigError("environment.n_traj", "trajectory count must be >= 1");
        }
    } else if (const auto* b = std::get_if<ThermalDrive>(&env)) {
        require_finite(b->n0, "environment.n0");
        require_finite(b->omega_drive, "environment.omega_drive");
        require_finite(b->gamma_phi, "environment.gamma_phi");
        if (b->n0 < 0.0) {
            throw ConfigError("environment.n0", "thermal occupation must be >= 0");
        }
        if (b->gamma_phi < 0.0) {
            throw ConfigError("environment.gamma_phi", "dephasing rate must be >= 0");
        }
    }
}

void SystemSpec::validate() const {
    if (n_qubits < 1) {
        throw ConfigError("system.n_qubits", "must be >= 1");
    }
    require_finite(omega_b, "system.omega_b");
    require_finite(delta, "filter.delta");
    require_finite(g, "system.g");
    require_finite(gamma0, "system.gamma0");
    require_finite(kappa, "system.kappa");
    require_finite(omega_cut, "system.omega_cut");
    if (!(gamma0 > 0.0)) {
        throw ConfigError("system.gamma0", "must be > 0");
    }
    if (g < 0.0) {
        throw ConfigError("system.g", "must be >= 0");
    }
    if (!(omega_cut > 0.0)) {
        throw ConfigError("system.omega_cut", "must be > 0");
    }
    if (eta) {
        require_finite(*eta, "system.eta");
        if (*eta < 0.0) {
            throw ConfigError("system.eta", "must be >= 0");
        }
    }
    if (representation == Representation::full_cavity) {
        if (!(kappa > 0.0)) {
            throw ConfigError("system.kappa", "must be > 0 in full-cavity representation");
        }
        if (n_cav < 2) {
            throw ConfigError("system.n_cav", "must be >= 2");
        }
    }
}

ComplexMatrix Generator::hamiltonian_at(std::size_t step, double t) const {
    if (!modulation || !modulation->offset) {
        return hamiltonian;
    }
    return hamiltonian + modulation->offset(step, t) * modulation->op;
}

double delta_star(std::size_t n_qubits, double g, double gamma0) {
    if (!(gamma0 > 0.0)) {
        throw DomainError("delta_star: gamma0 must be > 0");
    }
    if (g < 0.0) {
        throw DomainError("delta_star: g must be >= 0");
    }
    return g * std::sqrt(static_cast<double>(n_qubits) / (2.0 * gamma0));
}

double filtered_rate(double delta, double eta, double omega_cut) {
    if (!(omega_cut > 0.0)) {
        throw DomainError("filtered_rate: omega_cut must be > 0");
    }
    if (eta < 0.0) {
        throw DomainError("filtered_rate: eta must be >= 0");
    }
    const double wc2 = omega_cut * omega_cut;
    return eta * wc2 / (wc2 + delta * delta);
}

double ohmic_density(double omega, double eta, double omega_cut) {
    if (!(omega_cut > 0.0)) {
        throw DomainError("ohmic_density: omega_cut must be > 0");
    }
    return eta * omega * std::exp(-omega / omega_cut);
}

double effective_spectral_density(double omega, double delta, double kappa,
                                  const std::function<double(double)>& j_bare) {
    if (!(kappa > 0.0)) {
        throw DomainError("effective_spectral_density: kappa must be > 0");
    }
    const double detune = omega - delta;
    return kappa * j_bare(omega) / (detune * detune + kappa * kappa);
}

ComplexMatrix battery_hamiltonian(const SystemSpec& spec) {
    return spec.omega_b * collective_ops(spec.n_qubits).jz;
}

Generator build_generator(const SystemSpec& spec, const EnvironmentSpec& env, bool filter_on) {
    spec.validate();
    validate(env);
    const double detuning = filter_on ? spec.delta : 0.0;
    const CollectiveOps spin = collective_ops(spec.n_qubits);

    Generator gen;
    if (spec.representation == Representation::reduced) {
        gen.basis = BasisDescriptor::battery(spec.n_qubits);
        gen.hamiltonian = spec.omega_b * spin.jz;
        const double rate = filtered_rate(detuning, spec.effective_eta(), spec.omega_cut);

        if (const auto* thermal = std::get_if<ThermalDrive>(&env)) {
            const ThermalDrive drive = *thermal;
            const double gamma0 = spec.gamma0;
            gen.dissipators.push_back(
                {spin.jminus, [drive, rate](double t) { return rate * (drive.occupation(t) + 1.0); },
                 "emission"});
            gen.dissipators.push_back(
                {spin.jplus, [drive, gamma0](double t) { return gamma0 * drive.occupation(t); },
                 "absorption"});
            const double gamma_phi = drive.gamma_phi;
            gen.dissipators.push_back({spin.jz, [gamma_phi](double) { return gamma_phi; }, "dephasing", true});
        } else {
            gen.dissipators.push_back({spin.jminus, [rate](double) { return rate; }, "collective_decay", true});
        }
        if (std::holds_alternative<TelegraphNoise>(env)) {
            gen.modulation = FrequencyChannel{spin.jz, {}};
        }
        return gen;
    }

    if (std::holds_alternative<ThermalDrive>(env)) {
        throw ConfigError("environment.type",
                          "environment B is only defined for the reduced representation");
    }
    gen.basis = BasisDescriptor::battery_cavity(spec.n_qubits, spec.n_cav);
    const CavityOps cav = cavity_ops(spec.n_cav);
    const ComplexMatrix jz = lift(spin.jz, 0, gen.basis);
    const ComplexMatrix jp = lift(spin.jplus, 0, gen.basis);
    const ComplexMatrix jm = lift(spin.jminus, 0, gen.basis);
    const ComplexMatrix a = lift(cav.a, 1, gen.basis);
    const ComplexMatrix adag = lift(cav.adag, 1, gen.basis);
    const double omega_c = spec.omega_b + detuning;
    gen.hamiltonian = spec.omega_b * jz + omega_c * (adag * a) + spec.g * (jp * a + jm * adag);
    const double kappa = spec.kappa;
    gen.dissipators.push_back({a, [kappa](double) { return kappa; }, "cavity_loss", true});
    if (std::holds_alternative<TelegraphNoise>(env)) {
        gen.modulation = FrequencyChannel{jz, {}};
    }
    return gen;
}

NonHermitianRoots nonhermitian_eigenvalues(double omega_eff, double delta, double gamma0) {
    const Complex b(delta, -0.5 * gamma0);
    const double omega2 = omega_eff * omega_eff;
    Complex root = std::sqrt(b * b + 4.0 * omega2);
    // Pick the sign that avoids cancellation; the small root then follows
    // from the product of roots, -omega^2.
    if (std::real(std::conj(b) * root) < 0.0) {
        root = -root;
    }
    const Complex large = 0.5 * (b + root);
    if (std::abs(large) == 0.0) {
        return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
    }
    return {-omega2 / large, large};
}

double dispersive_decay_rate(double g, std::size_t n_qubits, double delta, double gamma0) {
    if (delta == 0.0) {
        throw SingularityError("dispersive_decay_rate: delta must be non-zero");
    }
    return gamma0 * g * g * static_cast<double>(n_qubits) / (delta * delta);
}

}  // namespace ergoshield
