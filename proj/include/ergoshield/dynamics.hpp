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
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "ergoshield/environment.hpp"
#include "ergoshield/linalg.hpp"
#include "ergoshield/metrics.hpp"
#include "ergoshield/model.hpp"

namespace ergoshield {

/// Uniform grid t_start, t_start + dt, ..., t_end.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 20.0;
    double dt = 0.005;

    std::size_t steps() const;
    std::size_t points() const { return steps() + 1; }
    double time(std::size_t k) const { return t_start + static_cast<double>(k) * dt; }
    std::vector<double> times() const;

    /// Throws GridError. With `require_odd` the point count must be odd so
    /// Simpson integration can consume the grid.
    void validate(bool require_odd = false) const;
};

/// Worst-case drift observed while integrating.
struct InvariantReport {
    double max_trace_drift = 0.0;
    double max_hermiticity_drift = 0.0;
    double min_eigenvalue = std::numeric_limits<double>::infinity();
    std::size_t steps_checked = 0;
    std::size_t positivity_checks = 0;

    void merge(const InvariantReport& other);
};

struct EvolveOptions {
    /// Positivity (minimum eigenvalue) is checked every this many steps;
    /// trace and Hermiticity are checked at every step.
    std::size_t positivity_stride = 1;
    /// Small generators with constant rates step through a cached RK4
    /// propagator; disable to force the stage-by-stage form.
    bool use_propagators = true;
};

using StepObserver = std::function<void(std::size_t step, double t, const ComplexMatrix& rho)>;

struct EvolveResult {
    ComplexMatrix final_state;
    InvariantReport invariants;
};

/// Classic fourth-order Runge-Kutta on the Lindblad generator. The observer
/// sees the initial state (step 0) and the state after every step. Throws
/// NumericalFailure when trace, Hermiticity or positivity drift beyond the
/// Tolerances gates; the state is never renormalized.
EvolveResult evolve(const ComplexMatrix& rho0, const Generator& gen, const TimeGrid& grid,
                    const StepObserver& observer = {}, const EvolveOptions& options = {});

/// Counter-based stream: stream(master, index) is independent of how many
/// other streams were created before it.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    static RandomStream for_path(std::uint64_t master_seed, std::uint64_t path_index);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

struct RtnPath {
    std::vector<std::int8_t> values;  // chi on each grid point, held until the next point
};

/// Telegraph path: initial sign equiprobable, flip with probability
/// 1 - exp(-lambda dt) per step.
RtnPath sample_rtn_path(double lambda_switch, const TimeGrid& grid, RandomStream& stream);

/// Copy of `gen` whose frequency channel follows delta_amp * chi(step).
Generator with_telegraph_path(const Generator& gen, std::shared_ptr<const RtnPath> path,
                              double delta_amp);

struct EnsembleOptions {
    std::size_t jobs = 1;
    EvolveOptions evolve;
};

/// Battery-reduced states, one series per initial state, averaged over the
/// telegraph ensemble. Every initial state sees the same noise path within
/// a trajectory. Averages are accumulated in fixed path blocks and merged in
/// block order, so results are bitwise independent of the worker count.
struct EnsembleAverage {
    std::vector<std::vector<ComplexMatrix>> series;
    InvariantReport invariants;
};

EnsembleAverage telegraph_ensemble_average(std::span<const ComplexMatrix> initial_states,
                                           const Generator& gen, const TelegraphNoise& noise,
                                           const TimeGrid& grid, const EnsembleOptions& options = {});

/// Reduce a joint state to the battery mode (slot 0).
ComplexMatrix battery_state(const ComplexMatrix& rho, const BasisDescriptor& basis);

enum class BlpPair { none, superposition, basis };

/// "superposition", "basis" or "none"; ConfigError otherwise.
BlpPair parse_blp_pair(const std::string& text);
std::string to_string(BlpPair pair);

/// |J,J> on the battery, cavity (if any) in vacuum.
ComplexMatrix charged_state(const SystemSpec& spec);

/// Canonical initial pair for the backflow measure: (|J,J> +/- |J,-J>)/sqrt2
/// for `superposition`, |J,J> and |J,-J> for `basis`.
std::pair<ComplexMatrix, ComplexMatrix> canonical_pair(const SystemSpec& spec, BlpPair pair);

struct SimulationResult {
    std::vector<double> times;
    std::vector<double> ergotropy;
    std::vector<double> energy;
    std::vector<double> excitation;       // <Jz> + J
    std::vector<double> trace_distance;   // empty when no pair was evolved
    double e_res = 0.0;
    std::optional<BlpResult> blp;
    ResidualMode e_res_mode = ResidualMode::integrated;
    InvariantReport invariants;
};

struct SimulationRequest {
    SystemSpec system;
    EnvironmentSpec environment = NoEnvironment{};
    bool filter_on = true;
    TimeGrid grid;
    ResidualMode e_res_mode = ResidualMode::integrated;
    BlpPair blp_pair = BlpPair::superposition;
    std::size_t jobs = 1;
    EvolveOptions evolve;
};

/// Evolve the charged state (and the backflow pair, if requested) and
/// summarize it. Telegraph environments are ensemble-averaged.
SimulationResult simulate(const SimulationRequest& request);

/// Telegraph ensemble run from rho0 without a backflow pair.
SimulationResult rtn_ensemble_evolve(const ComplexMatrix& rho0, const SystemSpec& spec,
                                     const TelegraphNoise& noise, bool filter_on, const TimeGrid& grid,
                                     ResidualMode mode = ResidualMode::integrated,
                                     const EnsembleOptions& options = {});

/// Trace distance between the battery states of two evolutions driven by
/// identical noise realizations.
std::vector<double> evolve_pair_shared_noise(const ComplexMatrix& rho1, const ComplexMatrix& rho2,
                                             const SystemSpec& spec, const EnvironmentSpec& env,
                                             bool filter_on, const TimeGrid& grid,
                                             const EnsembleOptions& options = {});

}  // namespace ergoshield
