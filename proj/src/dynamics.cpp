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

#include "ergoshield/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ergoshield/parallel.hpp"

namespace ergoshield {

namespace {

constexpr std::size_t kPathBlock = 16;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Right-hand side of the master equation with operator products cached.
class Lindbladian {
public:
    explicit Lindbladian(const Generator& gen) : gen_(gen) {
        for (const auto& d : gen.dissipators) {
            Channel c;
            c.op = d.op;
            c.op_dag = d.op.adjoint();
            c.decay = c.op_dag * c.op;
            c.rate = d.rate;
            channels_.push_back(std::move(c));
        }
    }

    // `shift` is the modulation offset held for the current step.
    void apply(double shift, double t, const ComplexMatrix& rho, ComplexMatrix& out) const {
        const Complex minus_i(0.0, -1.0);
        out.noalias() = minus_i * (gen_.hamiltonian * rho);
        out.noalias() -= minus_i * (rho * gen_.hamiltonian);
        if (shift != 0.0) {
            const ComplexMatrix& op = gen_.modulation->op;
            out.noalias() += (minus_i * shift) * (op * rho);
            out.noalias() -= (minus_i * shift) * (rho * op);
        }
        for (const auto& c : channels_) {
            const double rate = c.rate(t);
            if (rate == 0.0) {
                continue;
            }
            scratch_.noalias() = c.op * rho;
            out.noalias() += rate * (scratch_ * c.op_dag);
            out.noalias() -= (0.5 * rate) * (c.decay * rho);
            out.noalias() -= (0.5 * rate) * (rho * c.decay);
        }
    }

    // Superoperator on column-major vec(rho), using vec(A X B) = (B^T kron A) vec(X).
    ComplexMatrix superoperator(double shift) const {
        const Eigen::Index d = gen_.hamiltonian.rows();
        const ComplexMatrix id = ComplexMatrix::Identity(d, d);
        const Complex minus_i(0.0, -1.0);
        ComplexMatrix h = gen_.hamiltonian;
        if (shift != 0.0) {
            h += shift * gen_.modulation->op;
        }
        ComplexMatrix l = minus_i * (kron(id, h) - kron(h.transpose(), id));
        for (const auto& c : channels_) {
            const double rate = c.rate(0.0);
            if (rate == 0.0) {
                continue;
            }
            l += rate * (kron(c.op.conjugate(), c.op) - 0.5 * kron(id, c.decay) -
                         0.5 * kron(c.decay.transpose(), id));
        }
        return l;
    }

private:
    struct Channel {
        ComplexMatrix op;
        ComplexMatrix op_dag;
        ComplexMatrix decay;
        std::function<double(double)> rate;
    };

    const Generator& gen_;
    std::vector<Channel> channels_;
    mutable ComplexMatrix scratch_;
};

// One RK4 step of an autonomous linear system is the degree-4 Taylor
// polynomial of exp(dt L); it is built once per distinct offset value.
class StepPropagators {
public:
    StepPropagators(const Lindbladian& rhs, double dt) : rhs_(rhs), dt_(dt) {}

    const ComplexMatrix& at(double shift) {
        auto it = cache_.find(shift);
        if (it != cache_.end()) {
            return it->second;
        }
        const ComplexMatrix a = dt_ * rhs_.superoperator(shift);
        const Eigen::Index n = a.rows();
        ComplexMatrix term = ComplexMatrix::Identity(n, n);
        ComplexMatrix p = term;
        for (int k = 1; k <= 4; ++k) {
            term = (a * term) / static_cast<double>(k);
            p += term;
        }
        return cache_.emplace(shift, std::move(p)).first->second;
    }

private:
    const Lindbladian& rhs_;
    double dt_;
    std::map<double, ComplexMatrix> cache_;
};

// Above this dimension the d^2 x d^2 propagator costs more than operator products.
constexpr Eigen::Index kPropagatorMaxDim = 12;

bool piecewise_autonomous(const Generator& gen) {
    return std::all_of(gen.dissipators.begin(), gen.dissipators.end(),
                       [](const Dissipator& d) { return d.constant; });
}

void check_invariants(const ComplexMatrix& rho, std::size_t step, bool check_positivity,
                      InvariantReport& report) {
    const double trace_drift = std::abs(rho.trace() - Complex(1.0, 0.0));
    const double herm_drift = hermiticity_deviation(rho);
    report.max_trace_drift = std::max(report.max_trace_drift, trace_drift);
    report.max_hermiticity_drift = std::max(report.max_hermiticity_drift, herm_drift);
    ++report.steps_checked;
    if (!(trace_drift < Tolerances::trace_drift)) {
        std::ostringstream msg;
        msg << "trace drift " << trace_drift << " at step " << step;
        throw NumericalFailure(step, "trace", msg.str());
    }
    if (!(herm_drift < Tolerances::hermiticity_drift)) {
        std::ostringstream msg;
        msg << "hermiticity drift " << herm_drift << " at step " << step;
        throw NumericalFailure(step, "hermiticity", msg.str());
    }
    if (check_positivity) {
        const double min_eig = herm_eigenvalues(rho).minCoeff();
        report.min_eigenvalue = std::min(report.min_eigenvalue, min_eig);
        ++report.positivity_checks;
        if (!(min_eig > Tolerances::positivity_floor)) {
            std::ostringstream msg;
            msg << "minimum eigenvalue " << min_eig << " at step " << step;
            throw NumericalFailure(step, "positivity", msg.str());
        }
    }
}

struct Observables {
    ComplexMatrix h_battery;
    ComplexMatrix jz;
    double j = 0.0;
};

Observables observables_for(const SystemSpec& spec) {
    return {battery_hamiltonian(spec), collective_ops(spec.n_qubits).jz,
            0.5 * static_cast<double>(spec.n_qubits)};
}

void record(SimulationResult& out, std::size_t k, const ComplexMatrix& battery, const Observables& obs) {
    const ErgotropyBreakdown e = ergotropy(battery, obs.h_battery);
    out.ergotropy[k] = e.ergotropy;
    out.energy[k] = e.total_energy;
    out.excitation[k] = expectation(obs.jz, battery) + obs.j;
}

SimulationResult empty_result(const TimeGrid& grid, ResidualMode mode) {
    SimulationResult out;
    out.times = grid.times();
    const std::size_t n = out.times.size();
    out.ergotropy.assign(n, 0.0);
    out.energy.assign(n, 0.0);
    out.excitation.assign(n, 0.0);
    out.e_res_mode = mode;
    return out;
}

}  // namespace

std::size_t TimeGrid::steps() const {
    const double ratio = (t_end - t_start) / dt;
    return static_cast<std::size_t>(std::llround(ratio));
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> out(points());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = time(k);
    }
    return out;
}

void TimeGrid::validate(bool require_odd) const {
    if (!std::isfinite(t_start) || !std::isfinite(t_end) || !std::isfinite(dt)) {
        throw GridError("time grid: bounds and step must be finite");
    }
    if (!(t_end > t_start)) {
        throw GridError("time grid: t_end must exceed t_start");
    }
    if (!(dt > 0.0)) {
        throw GridError("time grid: dt must be > 0");
    }
    const double ratio = (t_end - t_start) / dt;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
        throw GridError("time grid: (t_end - t_start) / dt must be an integer");
    }
    if (require_odd && points() % 2 == 0) {
        throw GridError("time grid: Simpson integration needs an odd number of points");
    }
}

void InvariantReport::merge(const InvariantReport& other) {
    max_trace_drift = std::max(max_trace_drift, other.max_trace_drift);
    max_hermiticity_drift = std::max(max_hermiticity_drift, other.max_hermiticity_drift);
    min_eigenvalue = std::min(min_eigenvalue, other.min_eigenvalue);
    steps_checked += other.steps_checked;
    positivity_checks += other.positivity_checks;
}

EvolveResult evolve(const ComplexMatrix& rho0, const Generator& gen, const TimeGrid& grid,
                    const StepObserver& observer, const EvolveOptions& options) {
    grid.validate();
    const auto dim = static_cast<Eigen::Index>(gen.basis.dimension());
    if (rho0.rows() != dim || rho0.cols() != dim) {
        throw ShapeError("evolve: initial state does not match the generator basis");
    }
    const std::size_t stride = std::max<std::size_t>(1, options.positivity_stride);

    EvolveResult result;
    ComplexMatrix rho = rho0;
    check_invariants(rho, 0, true, result.invariants);
    if (observer) {
        observer(0, grid.time(0), rho);
    }

    const Lindbladian rhs(gen);
    const double dt = grid.dt;
    const std::size_t steps = grid.steps();
    auto shift_at = [&](std::size_t step) {
        return gen.modulation && gen.modulation->offset ? gen.modulation->offset(step, grid.time(step)) : 0.0;
    };
    auto finish_step = [&](std::size_t done) {
        check_invariants(rho, done, done % stride == 0 || done == steps, result.invariants);
        if (observer) {
            observer(done, grid.time(done), rho);
        }
    };

    if (options.use_propagators && dim <= kPropagatorMaxDim && piecewise_autonomous(gen)) {
        StepPropagators propagators(rhs, dt);
        ComplexVector v = rho.reshaped();
        ComplexVector next(v.size());
        for (std::size_t step = 0; step < steps; ++step) {
            next.noalias() = propagators.at(shift_at(step)) * v;
            v.swap(next);
            rho = v.reshaped(dim, dim);
            finish_step(step + 1);
        }
    } else {
        ComplexMatrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim), stage(dim, dim);
        for (std::size_t step = 0; step < steps; ++step) {
            const double t = grid.time(step);
            const double shift = shift_at(step);
            rhs.apply(shift, t, rho, k1);
            stage = rho + (0.5 * dt) * k1;
            rhs.apply(shift, t + 0.5 * dt, stage, k2);
            stage = rho + (0.5 * dt) * k2;
            rhs.apply(shift, t + 0.5 * dt, stage, k3);
            stage = rho + dt * k3;
            rhs.apply(shift, t + dt, stage, k4);
            rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            finish_step(step + 1);
        }
    }
    result.final_state = std::move(rho);
    return result;
}

RandomStream RandomStream::for_path(std::uint64_t master_seed, std::uint64_t path_index) {
    return RandomStream(splitmix64(splitmix64(master_seed) ^ (path_index + 0x632BE59BD9B4E019ULL)));
}

RtnPath sample_rtn_path(double lambda_switch, const TimeGrid& grid, RandomStream& stream) {
    if (!(lambda_switch > 0.0)) {
        throw DomainError("sample_rtn_path: switching rate must be > 0");
    }
    grid.validate();
    const double flip = -std::expm1(-lambda_switch * grid.dt);
    RtnPath path;
    path.values.resize(grid.points());
    std::int8_t chi = stream.uniform() < 0.5 ? 1 : -1;
    path.values[0] = chi;
    for (std::size_t k = 1; k < path.values.size(); ++k) {
        if (stream.uniform() < flip) {
            chi = static_cast<std::int8_t>(-chi);
        }
        path.values[k] = chi;
    }
    return path;
}

Generator with_telegraph_path(const Generator& gen, std::shared_ptr<const RtnPath> path,
                              double delta_amp) {
    if (!gen.modulation) {
        throw ConfigError("environment.type", "generator has no frequency-noise channel");
    }
    if (!path || path->values.empty()) {
        throw DomainError("with_telegraph_path: empty noise path");
    }
    Generator out = gen;
    out.modulation->offset = [path = std::move(path), delta_amp](std::size_t step, double) {
        const std::size_t k = std::min(step, path->values.size() - 1);
        return delta_amp * static_cast<double>(path->values[k]);
    };
    return out;
}

ComplexMatrix battery_state(const ComplexMatrix& rho, const BasisDescriptor& basis) {
    if (basis.modes.size() == 1) {
        return rho;
    }
    const std::vector<std::size_t> dims = basis.dimensions();
    const std::size_t keep[] = {0};
    return partial_trace(rho, dims, keep);
}

EnsembleAverage telegraph_ensemble_average(std::span<const ComplexMatrix> initial_states,
                                           const Generator& gen, const TelegraphNoise& noise,
                                           const TimeGrid& grid, const EnsembleOptions& options) {
    validate(EnvironmentSpec{noise});
    grid.validate();
    if (initial_states.empty()) {
        throw ShapeError("telegraph_ensemble_average: no initial states");
    }
    const std::size_t points = grid.points();
    const std::size_t n_states = initial_states.size();
    const auto battery_dim = static_cast<Eigen::Index>(gen.basis.modes.front().dimension());
    const std::size_t n_blocks = (noise.n_traj + kPathBlock - 1) / kPathBlock;
    const std::size_t jobs = resolve_jobs(options.jobs);

    using Series = std::vector<std::vector<ComplexMatrix>>;
    auto zero_series = [&] {
        return Series(n_states, std::vector<ComplexMatrix>(points, ComplexMatrix::Zero(battery_dim, battery_dim)));
    };

    EnsembleAverage out;
    out.series = zero_series();

    for (std::size_t first = 0; first < n_blocks; first += jobs) {
        const std::size_t batch = std::min(jobs, n_blocks - first);
        std::vector<Series> partial(batch);
        std::vector<InvariantReport> reports(batch);
        parallel_for(batch, jobs, [&](std::size_t b) {
            const std::size_t block = first + b;
            partial[b] = zero_series();
            const std::size_t begin = block * kPathBlock;
            const std::size_t end = std::min(noise.n_traj, begin + kPathBlock);
            for (std::size_t p = begin; p < end; ++p) {
                RandomStream stream = RandomStream::for_path(noise.seed, p);
                auto path = std::make_shared<const RtnPath>(sample_rtn_path(noise.lambda_switch, grid, stream));
                const Generator path_gen = with_telegraph_path(gen, path, noise.delta_amp);
                for (std::size_t s = 0; s < n_states; ++s) {
                    auto& acc = partial[b][s];
                    try {
                        const EvolveResult r = evolve(
                            initial_states[s], path_gen, grid,
                            [&](std::size_t k, double, const ComplexMatrix& rho) {
                                acc[k] += battery_state(rho, path_gen.basis);
                            },
                            options.evolve);
                        reports[b].merge(r.invariants);
                    } catch (const NumericalFailure& e) {
                        std::ostringstream msg;
                        msg << "trajectory " << p << ": " << e.what();
                        throw NumericalFailure(e.step(), e.invariant(), msg.str());
                    }
                }
            }
        });
        for (std::size_t b = 0; b < batch; ++b) {
            for (std::size_t s = 0; s < n_states; ++s) {
                for (std::size_t k = 0; k < points; ++k) {
                    out.series[s][k] += partial[b][s][k];
                }
            }
            out.invariants.merge(reports[b]);
        }
    }

    const double inv = 1.0 / static_cast<double>(noise.n_traj);
    for (auto& series : out.series) {
        for (auto& rho : series) {
            rho *= inv;
        }
    }
    return out;
}

BlpPair parse_blp_pair(const std::string& text) {
    if (text == "superposition") {
        return BlpPair::superposition;
    }
    if (text == "basis") {
        return BlpPair::basis;
    }
    if (text == "none") {
        return BlpPair::none;
    }
    throw ConfigError("metric.blp_pair", "unknown pair '" + text + "'");
}

std::string to_string(BlpPair pair) {
    switch (pair) {
        case BlpPair::none:
            return "none";
        case BlpPair::superposition:
            return "superposition";
        case BlpPair::basis:
            return "basis";
    }
    return "none";
}

namespace {

ComplexMatrix embed_battery_vector(const SystemSpec& spec, const ComplexVector& battery) {
    if (spec.representation == Representation::reduced) {
        return projector(battery);
    }
    ComplexVector vacuum = ComplexVector::Zero(static_cast<Eigen::Index>(spec.n_cav));
    vacuum(0) = 1.0;
    return projector(product_state({battery, vacuum}));
}

}  // namespace

ComplexMatrix charged_state(const SystemSpec& spec) {
    const double j = 0.5 * static_cast<double>(spec.n_qubits);
    return embed_battery_vector(spec, dicke_state(spec.n_qubits, j));
}

std::pair<ComplexMatrix, ComplexMatrix> canonical_pair(const SystemSpec& spec, BlpPair pair) {
    const double j = 0.5 * static_cast<double>(spec.n_qubits);
    const ComplexVector top = dicke_state(spec.n_qubits, j);
    const ComplexVector bottom = dicke_state(spec.n_qubits, -j);
    switch (pair) {
        case BlpPair::superposition: {
            const double s = 1.0 / std::sqrt(2.0);
            return {embed_battery_vector(spec, s * (top + bottom)),
                    embed_battery_vector(spec, s * (top - bottom))};
        }
        case BlpPair::basis:
            return {embed_battery_vector(spec, top), embed_battery_vector(spec, bottom)};
        case BlpPair::none:
            break;
    }
    throw ConfigError("metric.blp_pair", "no canonical pair requested");
}

SimulationResult simulate(const SimulationRequest& request) {
    const SystemSpec& spec = request.system;
    const bool with_pair = request.blp_pair != BlpPair::none;
    request.grid.validate(with_pair);
    const Generator gen = build_generator(spec, request.environment, request.filter_on);
    const Observables obs = observables_for(spec);

    std::vector<ComplexMatrix> initial{charged_state(spec)};
    if (with_pair) {
        auto [rho1, rho2] = canonical_pair(spec, request.blp_pair);
        initial.push_back(std::move(rho1));
        initial.push_back(std::move(rho2));
    }

    SimulationResult out = empty_result(request.grid, request.e_res_mode);
    const std::size_t points = out.times.size();
    if (with_pair) {
        out.trace_distance.assign(points, 0.0);
    }

    if (const auto* noise = std::get_if<TelegraphNoise>(&request.environment)) {
        EnsembleAverage avg =
            telegraph_ensemble_average(initial, gen, *noise, request.grid, {request.jobs, request.evolve});
        for (std::size_t k = 0; k < points; ++k) {
            record(out, k, avg.series[0][k], obs);
            if (with_pair) {
                out.trace_distance[k] = half_trace_norm(avg.series[1][k] - avg.series[2][k]);
            }
        }
        out.invariants = avg.invariants;
    } else {
        const EvolveResult main = evolve(
            initial[0], gen, request.grid,
            [&](std::size_t k, double, const ComplexMatrix& rho) { record(out, k, battery_state(rho, gen.basis), obs); },
            request.evolve);
        out.invariants = main.invariants;
        if (with_pair) {
            std::vector<ComplexMatrix> first(points);
            const EvolveResult a = evolve(
                initial[1], gen, request.grid,
                [&](std::size_t k, double, const ComplexMatrix& rho) { first[k] = battery_state(rho, gen.basis); },
                request.evolve);
            const EvolveResult b = evolve(
                initial[2], gen, request.grid,
                [&](std::size_t k, double, const ComplexMatrix& rho) {
                    out.trace_distance[k] = half_trace_norm(first[k] - battery_state(rho, gen.basis));
                },
                request.evolve);
            out.invariants.merge(a.invariants);
            out.invariants.merge(b.invariants);
        }
    }

    out.e_res = residual_ergotropy(out.times, out.ergotropy, request.e_res_mode);
    if (with_pair) {
        out.blp = blp_measure(out.times, out.trace_distance);
    }
    return out;
}

SimulationResult rtn_ensemble_evolve(const ComplexMatrix& rho0, const SystemSpec& spec,
                                     const TelegraphNoise& noise, bool filter_on, const TimeGrid& grid,
                                     ResidualMode mode, const EnsembleOptions& options) {
    const Generator gen = build_generator(spec, noise, filter_on);
    const Observables obs = observables_for(spec);
    const ComplexMatrix states[] = {rho0};
    EnsembleAverage avg = telegraph_ensemble_average(states, gen, noise, grid, options);
    SimulationResult out = empty_result(grid, mode);
    for (std::size_t k = 0; k < out.times.size(); ++k) {
        record(out, k, avg.series[0][k], obs);
    }
    out.invariants = avg.invariants;
    out.e_res = residual_ergotropy(out.times, out.ergotropy, mode);
    return out;
}

std::vector<double> evolve_pair_shared_noise(const ComplexMatrix& rho1, const ComplexMatrix& rho2,
                                             const SystemSpec& spec, const EnvironmentSpec& env,
                                             bool filter_on, const TimeGrid& grid,
                                             const EnsembleOptions& options) {
    const Generator gen = build_generator(spec, env, filter_on);
    std::vector<double> distance(grid.points(), 0.0);
    if (const auto* noise = std::get_if<TelegraphNoise>(&env)) {
        const ComplexMatrix states[] = {rho1, rho2};
        EnsembleAverage avg = telegraph_ensemble_average(states, gen, *noise, grid, options);
        for (std::size_t k = 0; k < distance.size(); ++k) {
            distance[k] = half_trace_norm(avg.series[0][k] - avg.series[1][k]);
        }
        return distance;
    }
    std::vector<ComplexMatrix> first(grid.points());
    evolve(
        rho1, gen, grid,
        [&](std::size_t k, double, const ComplexMatrix& rho) { first[k] = battery_state(rho, gen.basis); },
        options.evolve);
    evolve(
        rho2, gen, grid,
        [&](std::size_t k, double, const ComplexMatrix& rho) {
            distance[k] = half_trace_norm(first[k] - battery_state(rho, gen.basis));
        },
        options.evolve);
    return distance;
}

}  // namespace ergoshield
