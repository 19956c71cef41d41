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

#include "ergoshield/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ergoshield/parallel.hpp"

namespace ergoshield {

namespace {

SimulationRequest cell_request(const SimulationRequest& base, double delta, bool filter_on) {
    SimulationRequest req = base;
    req.system.delta = delta;
    req.filter_on = filter_on;
    req.jobs = 1;
    return req;
}

}  // namespace

std::vector<double> Axis::values() const {
    std::vector<double> out(resolution);
    for (std::size_t i = 0; i < resolution; ++i) {
        out[i] = resolution == 1 ? min
                                 : min + (max - min) * static_cast<double>(i) / static_cast<double>(resolution - 1);
    }
    if (resolution > 1) {
        out.back() = max;
    }
    return out;
}

SurvivalMap survival_map(const SurvivalRequest& request) {
    if (request.delta.resolution < 2 || request.gamma.resolution < 2) {
        throw ConfigError("sweep.resolution", "survival map needs at least 2 samples per axis");
    }
    if (!(request.delta.max > request.delta.min)) {
        throw ConfigError("sweep.delta_max", "detuning range is degenerate");
    }
    if (!(request.gamma.max > request.gamma.min) || !(request.gamma.min > 0.0)) {
        throw ConfigError("sweep.gamma_max", "gamma0 range must be positive and non-degenerate");
    }
    SurvivalMap map;
    map.delta_axis = request.delta.values();
    map.gamma_axis = request.gamma.values();
    const std::size_t nd = map.delta_axis.size();
    const std::size_t ng = map.gamma_axis.size();
    map.e_res = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ng), static_cast<Eigen::Index>(nd));
    for (double gamma : map.gamma_axis) {
        map.analytic_curve.push_back(delta_star(request.base.system.n_qubits, request.base.system.g, gamma));
    }

    SimulationRequest base = request.base;
    base.blp_pair = BlpPair::none;
    std::vector<double> cells(nd * ng, 0.0);
    parallel_for(cells.size(), request.jobs, [&](std::size_t idx) {
        const std::size_t row = idx / nd;
        const std::size_t col = idx % nd;
        SimulationRequest req = cell_request(base, map.delta_axis[col], true);
        req.system.gamma0 = map.gamma_axis[row];
        try {
            cells[idx] = simulate(req).e_res;
        } catch (const NumericalFailure& e) {
            std::ostringstream msg;
            msg << "cell (delta=" << map.delta_axis[col] << ", gamma0=" << map.gamma_axis[row] << "): " << e.what();
            throw NumericalFailure(e.step(), e.invariant(), msg.str());
        }
    });
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
        map.e_res(static_cast<Eigen::Index>(idx / nd), static_cast<Eigen::Index>(idx % nd)) = cells[idx];
    }
    return map;
}

OptimumResult maximize_on_window(const std::function<double(double)>& objective, double lo, double hi,
                                 const SearchOptions& options) {
    if (!(hi > lo)) {
        throw DomainError("optimal_detuning: search window is degenerate");
    }
    if (options.resolution < 3) {
        throw DomainError("optimal_detuning: coarse resolution must be >= 3");
    }
    OptimumResult out;
    std::map<double, double> cache;
    auto f = [&](double x) {
        auto it = cache.find(x);
        if (it != cache.end()) {
            return it->second;
        }
        ++out.evaluations;
        const double v = objective(x);
        cache.emplace(x, v);
        return v;
    };

    const Axis coarse{lo, hi, options.resolution};
    const std::vector<double> xs = coarse.values();
    std::vector<double> fs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fs[i] = f(xs[i]);
    }
    const auto [fmin_it, fmax_it] = std::minmax_element(fs.begin(), fs.end());
    if (*fmax_it - *fmin_it <= 1e-12 * std::max(1.0, std::abs(*fmax_it))) {
        out.degenerate = true;
        out.delta_opt = 0.5 * (lo + hi);
        out.e_res_opt = f(out.delta_opt);
        return out;
    }
    const auto best = static_cast<std::size_t>(std::distance(fs.begin(), fmax_it));
    double a = xs[best == 0 ? 0 : best - 1];
    double b = xs[best + 1 == xs.size() ? best : best + 1];

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > options.tolerance) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    double x = fc >= fd ? c : d;
    double fx = std::max(fc, fd);
    if (fs[best] >= fx) {
        x = xs[best];
        fx = fs[best];
    }
    // An optimum pressed against the edge is reported at the edge itself.
    const double edge_tol = 2.0 * options.tolerance;
    if (x - lo <= edge_tol && f(lo) >= fx - 1e-12 * std::max(1.0, std::abs(fx))) {
        x = lo;
        fx = f(lo);
        out.boundary = true;
    } else if (hi - x <= edge_tol && f(hi) >= fx - 1e-12 * std::max(1.0, std::abs(fx))) {
        x = hi;
        fx = f(hi);
        out.boundary = true;
    }
    out.delta_opt = x;
    out.e_res_opt = fx;
    return out;
}

OptimumResult optimal_detuning(std::size_t n_qubits, const EnvironmentSpec& env,
                               const SimulationRequest& base, double window_max,
                               const SearchOptions& options) {
    SimulationRequest req = base;
    req.system.n_qubits = n_qubits;
    req.environment = env;
    req.blp_pair = BlpPair::none;
    if (window_max <= 0.0) {
        window_max = 3.0 * delta_star(n_qubits, req.system.g, req.system.gamma0);
    }
    if (!(window_max > 0.0)) {
        throw DomainError("optimal_detuning: search window [0, 0] is degenerate");
    }
    return maximize_on_window(
        [&](double delta) { return simulate(cell_request(req, delta, true)).e_res; }, 0.0, window_max, options);
}

FitResult power_law_fit(std::span<const double> n, std::span<const double> delta) {
    if (n.size() != delta.size()) {
        throw ShapeError("power_law_fit: n and delta differ in length");
    }
    if (n.size() < 2) {
        throw DomainError("power_law_fit: at least two points are required");
    }
    const std::size_t m = n.size();
    Eigen::VectorXd x(static_cast<Eigen::Index>(m));
    Eigen::VectorXd y(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        if (!(n[i] > 0.0) || !(delta[i] > 0.0)) {
            throw DomainError("power_law_fit: all points must be positive");
        }
        x(static_cast<Eigen::Index>(i)) = std::log(n[i]);
        y(static_cast<Eigen::Index>(i)) = std::log(delta[i]);
    }
    const double x_mean = x.mean();
    const double y_mean = y.mean();
    const Eigen::VectorXd dx = x.array() - x_mean;
    const Eigen::VectorXd dy = y.array() - y_mean;
    const double sxx = dx.squaredNorm();
    if (!(sxx > 0.0)) {
        throw DomainError("power_law_fit: n values must not all coincide");
    }
    FitResult fit;
    fit.beta = dx.dot(dy) / sxx;
    fit.log_intercept = y_mean - fit.beta * x_mean;
    const Eigen::VectorXd residual = dy - fit.beta * dx;
    const double ss_res = residual.squaredNorm();
    const double ss_tot = dy.squaredNorm();
    fit.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    fit.beta_stderr = m > 2 ? std::sqrt(ss_res / static_cast<double>(m - 2) / sxx) : 0.0;
    return fit;
}

ScalingStudy scaling_study(const SimulationRequest& base, std::span<const std::size_t> n_list,
                           double window_factor, const SearchOptions& options, std::size_t jobs) {
    if (n_list.size() < 2) {
        throw DomainError("scaling_study: at least two qubit counts are required for a fit");
    }
    ScalingStudy study;
    study.rows.resize(n_list.size());
    parallel_for(n_list.size(), jobs, [&](std::size_t i) {
        const std::size_t n = n_list[i];
        ScalingRow row;
        row.n = n;
        row.delta_star = delta_star(n, base.system.g, base.system.gamma0);
        row.optimum = optimal_detuning(n, base.environment, base, window_factor * row.delta_star, options);
        study.rows[i] = row;
    });
    std::vector<double> ns;
    std::vector<double> ds;
    for (const auto& row : study.rows) {
        ns.push_back(static_cast<double>(row.n));
        ds.push_back(row.optimum.delta_opt);
    }
    study.fit = power_law_fit(ns, ds);
    return study;
}

RwaReport rwa_report(double g, double omega_b, std::size_t n_max_scan, double threshold) {
    if (!(g > 0.0) || !(omega_b > 0.0) || !(threshold > 0.0)) {
        throw DomainError("rwa_report: g, omega_b and threshold must be > 0");
    }
    RwaReport report;
    report.threshold = threshold;
    auto ratio = [&](std::size_t n) { return g * std::sqrt(static_cast<double>(n)) / omega_b; };
    // Relative slack absorbs round-off when the threshold lands exactly on an integer N.
    const double limit = threshold * (1.0 + 1e-12);
    const double estimate = std::floor(std::pow(threshold * omega_b / g, 2) * (1.0 + 1e-12));
    auto n_max = static_cast<std::size_t>(std::max(0.0, estimate));
    while (n_max > 0 && ratio(n_max) > limit) {
        --n_max;
    }
    while (ratio(n_max + 1) <= limit) {
        ++n_max;
    }
    report.n_max = n_max;
    for (std::size_t n = 1; n <= n_max_scan; ++n) {
        report.n.push_back(n);
        report.ratio.push_back(ratio(n));
    }
    return report;
}

std::vector<Table1Row> table1_harness(const Table1Request& request) {
    const std::size_t count = request.n_list.size();
    if (request.formula_only) {
        std::vector<Table1Row> rows(count);
        for (std::size_t i = 0; i < count; ++i) {
            rows[i].n = request.n_list[i];
            rows[i].delta_star = delta_star(rows[i].n, request.base.system.g, request.base.system.gamma0);
        }
        return rows;
    }
    // Task layout: (n index, environment, filter) flattened.
    std::vector<SimulationResult> results(count * 4);
    parallel_for(results.size(), request.jobs, [&](std::size_t idx) {
        const std::size_t i = idx / 4;
        const bool env_b = (idx / 2) % 2 == 1;
        const bool filtered = idx % 2 == 1;
        SimulationRequest req = request.base;
        req.system.n_qubits = request.n_list[i];
        req.environment = env_b ? EnvironmentSpec{request.env_b} : EnvironmentSpec{request.env_a};
        if (req.blp_pair == BlpPair::none) {
            req.blp_pair = BlpPair::superposition;
        }
        const double ds = delta_star(req.system.n_qubits, req.system.g, req.system.gamma0);
        results[idx] = simulate(cell_request(req, filtered ? ds : 0.0, filtered));
    });

    std::vector<Table1Row> rows;
    for (std::size_t i = 0; i < count; ++i) {
        Table1Row row;
        row.n = request.n_list[i];
        row.delta_star = delta_star(row.n, request.base.system.g, request.base.system.gamma0);
        for (int e = 0; e < 2; ++e) {
            const SimulationResult& unf = results[i * 4 + static_cast<std::size_t>(e) * 2];
            const SimulationResult& fil = results[i * 4 + static_cast<std::size_t>(e) * 2 + 1];
            EnvironmentColumns cols;
            cols.e_res_unfiltered = unf.e_res;
            cols.e_res_filtered = fil.e_res;
            cols.improvement = (fil.e_res - unf.e_res) / unf.e_res;
            cols.blp_unfiltered = unf.blp ? unf.blp->value : 0.0;
            cols.blp_filtered = fil.blp ? fil.blp->value : 0.0;
            (e == 0 ? row.env_a : row.env_b) = cols;
            row.invariants.merge(unf.invariants);
            row.invariants.merge(fil.invariants);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<AdvantageRow> advantage_study(const SimulationRequest& base,
                                          std::span<const std::size_t> n_list, std::size_t jobs) {
    if (n_list.empty() || n_list.front() != 1) {
        throw DomainError("advantage_study: n_list must start with 1 (single-qubit reference)");
    }
    std::vector<AdvantageRow> rows(n_list.size());
    parallel_for(n_list.size(), jobs, [&](std::size_t i) {
        SimulationRequest req = base;
        req.system.n_qubits = n_list[i];
        req.blp_pair = BlpPair::none;
        const double ds = delta_star(n_list[i], req.system.g, req.system.gamma0);
        rows[i].n = n_list[i];
        rows[i].e_n = simulate(cell_request(req, ds, true)).e_res;
    });
    for (auto& row : rows) {
        row.a_n = collective_advantage(row.e_n, rows.front().e_n, row.n);
    }
    return rows;
}

}  // namespace ergoshield
