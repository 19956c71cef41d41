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

#include "ergoshield/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ergoshield {

namespace {

bool is_uniform(std::span<const double> times) {
    const std::size_t n = times.size();
    const double h = (times[n - 1] - times[0]) / static_cast<double>(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs((times[k] - times[k - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            return false;
        }
    }
    return h > 0.0;
}

}  // namespace

double passive_energy(RealVector populations, RealVector energies) {
    if (populations.size() != energies.size()) {
        throw ShapeError("passive_energy: spectra have different lengths");
    }
    std::stable_sort(populations.begin(), populations.end(), std::greater<>());
    std::stable_sort(energies.begin(), energies.end());
    return populations.dot(energies);
}

ErgotropyBreakdown ergotropy(const ComplexMatrix& rho, const ComplexMatrix& h) {
    if (rho.rows() != rho.cols() || h.rows() != h.cols() || rho.rows() != h.rows()) {
        throw ShapeError("ergotropy: state and Hamiltonian dimensions differ");
    }
    ErgotropyBreakdown out;
    out.total_energy = expectation(h, rho);
    out.passive_energy = passive_energy(herm_eigenvalues(rho), herm_eigenvalues(h));
    out.ergotropy = out.total_energy - out.passive_energy;
    return out;
}

double half_trace_norm(const ComplexMatrix& delta) {
    return 0.5 * herm_eigenvalues(delta).cwiseAbs().sum();
}

double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
    if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols()) {
        throw ShapeError("trace_distance: states have different dimensions");
    }
    return half_trace_norm(rho1 - rho2);
}

BlpResult blp_measure(std::span<const double> times, std::span<const double> distance,
                      const BlpOptions& options) {
    const std::size_t n = distance.size();
    if (times.size() != n) {
        throw GridError("blp_measure: time and distance series differ in length");
    }
    if (n < 3 || n % 2 == 0) {
        throw GridError("blp_measure: Simpson integration needs an odd number (>= 3) of points");
    }
    const double h = (times[n - 1] - times[0]) / static_cast<double>(n - 1);
    if (!(h > 0.0)) {
        throw GridError("blp_measure: time grid must be increasing");
    }
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs((times[k] - times[k - 1]) - h) > 1e-9 * std::max(1.0, std::abs(h))) {
            throw GridError("blp_measure: time grid is not uniform");
        }
    }

    std::vector<double> sigma(n);
    sigma[0] = (distance[1] - distance[0]) / h;
    sigma[n - 1] = (distance[n - 1] - distance[n - 2]) / h;
    for (std::size_t k = 1; k + 1 < n; ++k) {
        sigma[k] = (distance[k + 1] - distance[k - 1]) / (2.0 * h);
    }

    BlpResult out;
    std::vector<double> positive(n, 0.0);
    bool open = false;
    double start = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const bool up = sigma[k] > options.sigma_floor;
        if (up) {
            positive[k] = sigma[k];
        }
        if (up && !open) {
            open = true;
            start = times[k];
        } else if (!up && open) {
            open = false;
            out.positive_intervals.emplace_back(start, times[k - 1]);
        }
    }
    if (open) {
        out.positive_intervals.emplace_back(start, times[n - 1]);
    }

    double acc = positive[0] + positive[n - 1];
    for (std::size_t k = 1; k + 1 < n; ++k) {
        acc += (k % 2 == 1 ? 4.0 : 2.0) * positive[k];
    }
    out.value = acc * h / 3.0;
    return out;
}

ResidualMode parse_residual_mode(const std::string& text) {
    if (text == "integrated") {
        return ResidualMode::integrated;
    }
    if (text == "final") {
        return ResidualMode::final_value;
    }
    if (text == "time-averaged" || text == "time_averaged") {
        return ResidualMode::time_averaged;
    }
    throw ConfigError("metric.e_res_mode", "unknown residual-ergotropy mode '" + text + "'");
}

std::string to_string(ResidualMode mode) {
    switch (mode) {
        case ResidualMode::integrated:
            return "integrated";
        case ResidualMode::final_value:
            return "final";
        case ResidualMode::time_averaged:
            return "time-averaged";
    }
    return "integrated";
}

double residual_ergotropy(std::span<const double> times, std::span<const double> series,
                          ResidualMode mode) {
    if (series.empty() || times.size() != series.size()) {
        throw ShapeError("residual_ergotropy: series must be non-empty and match the time grid");
    }
    if (mode == ResidualMode::final_value) {
        return series.back();
    }
    double integral = 0.0;
    const std::size_t n = series.size();
    if (n >= 3 && n % 2 == 1 && is_uniform(times)) {
        const double h = (times[n - 1] - times[0]) / static_cast<double>(n - 1);
        double acc = series[0] + series[n - 1];
        for (std::size_t k = 1; k + 1 < n; ++k) {
            acc += (k % 2 == 1 ? 4.0 : 2.0) * series[k];
        }
        integral = acc * h / 3.0;
    } else {
        for (std::size_t k = 1; k < n; ++k) {
            integral += 0.5 * (times[k] - times[k - 1]) * (series[k] + series[k - 1]);
        }
    }
    if (mode == ResidualMode::integrated) {
        return integral;
    }
    const double span = times.back() - times.front();
    if (!(span > 0.0)) {
        throw GridError("residual_ergotropy: time-averaged mode needs a non-degenerate grid");
    }
    return integral / span;
}

double collective_advantage(double e_n, double e_1, std::size_t n) {
    if (!(e_1 > 0.0)) {
        throw DomainError("collective_advantage: single-qubit reference must be > 0");
    }
    if (n < 1) {
        throw DomainError("collective_advantage: n must be >= 1");
    }
    return e_n / (static_cast<double>(n) * e_1);
}

}  // namespace ergoshield
