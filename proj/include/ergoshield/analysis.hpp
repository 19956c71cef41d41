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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ergoshield/dynamics.hpp"

namespace ergoshield {

/// Evenly spaced closed interval [min, max] with `resolution` samples.
struct Axis {
    double min = 0.0;
    double max = 1.0;
    std::size_t resolution = 2;

    std::vector<double> values() const;
};

struct SurvivalMap {
    std::vector<double> delta_axis;
    std::vector<double> gamma_axis;
    Eigen::MatrixXd e_res;               // rows follow gamma_axis, columns delta_axis
    std::vector<double> analytic_curve;  // delta_star at each gamma_axis entry
};

struct SurvivalRequest {
    SimulationRequest base;
    Axis delta;
    Axis gamma;
    std::size_t jobs = 1;
};

/// Residual ergotropy over a (delta, gamma0) grid, one filtered simulation
/// per cell. Cells share the environment seed and run independently.
SurvivalMap survival_map(const SurvivalRequest& request);

struct SearchOptions {
    std::size_t resolution = 9;  // coarse samples across the window
    double tolerance = 1e-4;     // golden-section bracket width
};

struct OptimumResult {
    double delta_opt = 0.0;
    double e_res_opt = 0.0;
    bool boundary = false;    // maximum sits on a window edge
    bool degenerate = false;  // flat landscape; delta_opt is the window midpoint
    std::size_t evaluations = 0;
};

/// Coarse scan of [lo, hi] followed by golden-section refinement around the
/// best sample.
OptimumResult maximize_on_window(const std::function<double(double)>& objective, double lo, double hi,
                                 const SearchOptions& options = {});

/// Detuning in [0, window_max] that maximizes the residual ergotropy of
/// `base` with N = n_qubits in environment `env`. A non-positive window_max
/// selects the default 3 * delta_star(N).
OptimumResult optimal_detuning(std::size_t n_qubits, const EnvironmentSpec& env,
                               const SimulationRequest& base, double window_max,
                               const SearchOptions& options = {});

struct FitResult {
    double beta = 0.0;
    double log_intercept = 0.0;
    double beta_stderr = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares of ln(delta) on ln(n).
FitResult power_law_fit(std::span<const double> n, std::span<const double> delta);

struct ScalingRow {
    std::size_t n = 0;
    double delta_star = 0.0;
    OptimumResult optimum;
};

struct ScalingStudy {
    std::vector<ScalingRow> rows;
    FitResult fit;
    double analytic_beta = 0.5;
};

ScalingStudy scaling_study(const SimulationRequest& base, std::span<const std::size_t> n_list,
                           double window_factor = 3.0, const SearchOptions& options = {},
                           std::size_t jobs = 1);

struct RwaReport {
    std::vector<std::size_t> n;
    std::vector<double> ratio;  // g sqrt(N) / omega_b
    double threshold = 0.1;
    std::size_t n_max = 0;      // largest N with ratio <= threshold
};

RwaReport rwa_report(double g, double omega_b, std::size_t n_max_scan, double threshold = 0.1);

struct EnvironmentColumns {
    double e_res_unfiltered = 0.0;
    double e_res_filtered = 0.0;
    double improvement = 0.0;  // (filtered - unfiltered) / unfiltered
    double blp_unfiltered = 0.0;
    double blp_filtered = 0.0;
};

struct Table1Row {
    std::size_t n = 0;
    double delta_star = 0.0;
    EnvironmentColumns env_a;
    EnvironmentColumns env_b;
    InvariantReport invariants;  // merged over the row's four runs
};

struct Table1Request {
    SimulationRequest base;  // system, grid and metric settings
    TelegraphNoise env_a;
    ThermalDrive env_b;
    std::vector<std::size_t> n_list{1, 2, 3, 4};
    std::size_t jobs = 1;
    bool formula_only = false;  // fill only the delta_star column
};

/// Unfiltered (delta = 0) versus filtered (delta = delta_star) comparison in
/// both environments for every N.
std::vector<Table1Row> table1_harness(const Table1Request& request);

struct AdvantageRow {
    std::size_t n = 0;
    double e_n = 0.0;
    double a_n = 0.0;
};

/// Filtered residual ergotropy at delta_star(N) and A(N) relative to the
/// first entry of n_list, which must be 1.
std::vector<AdvantageRow> advantage_study(const SimulationRequest& base,
                                          std::span<const std::size_t> n_list, std::size_t jobs = 1);

}  // namespace ergoshield
