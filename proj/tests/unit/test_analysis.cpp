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

#include <chrono>
#include <cmath>
#include <vector>

#include "ergoshield/analysis.hpp"
#include "test_support.hpp"

using namespace ergoshield;

namespace {

SimulationRequest quick_request(std::size_t n) {
    SimulationRequest req;
    req.system.n_qubits = n;
    req.grid = TimeGrid{0.0, 10.0, 0.01};
    req.blp_pair = BlpPair::none;
    return req;
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("axis sampling") {
    const auto v = Axis{0.0, 1.5, 4}.values();
    REQUIRE(v.size() == 4);
    CHECK(v.front() == 0.0);
    CHECK(v[1] == doctest::Approx(0.5));
    CHECK(v.back() == 1.5);
}

TEST_CASE("survival map without environment") {
    SurvivalRequest req;
    req.base = quick_request(1);
    req.delta = Axis{0.0, 1.5, 4};
    req.gamma = Axis{0.01, 0.1, 3};
    const SurvivalMap map = survival_map(req);
    CHECK(map.e_res.rows() == 3);
    CHECK(map.e_res.cols() == 4);
    REQUIRE(map.analytic_curve.size() == 3);
    for (std::size_t r = 0; r < 3; ++r) {
        CHECK(map.analytic_curve[r] == delta_star(1, 0.1, map.gamma_axis[r]));
        for (Eigen::Index c = 1; c < 4; ++c) {
            CHECK(map.e_res(static_cast<Eigen::Index>(r), c) > map.e_res(static_cast<Eigen::Index>(r), c - 1));
        }
        // Zero-detuning column is the unfiltered baseline, bit for bit.
        SimulationRequest baseline = req.base;
        baseline.system.gamma0 = map.gamma_axis[r];
        baseline.filter_on = false;
        CHECK(simulate(baseline).e_res == map.e_res(static_cast<Eigen::Index>(r), 0));
    }
    CHECK((map.e_res.array() >= 0.0).all());
    CHECK(map.e_res.allFinite());
}

TEST_CASE("survival map on the thermal environment is finite and schedule independent") {
    SurvivalRequest req;
    req.base = quick_request(2);
    req.base.grid = TimeGrid{0.0, 4.0, 0.01};
    req.base.environment = ThermalDrive{};
    req.delta = Axis{0.0, 1.5, 8};
    req.gamma = Axis{0.01, 0.1, 8};
    const SurvivalMap serial = survival_map(req);
    CHECK(serial.e_res.allFinite());
    CHECK((serial.e_res.array() >= 0.0).all());
    req.jobs = 4;
    const SurvivalMap parallel = survival_map(req);
    CHECK((serial.e_res.array() == parallel.e_res.array()).all());
}

TEST_CASE("survival map rejects degenerate axes") {
    SurvivalRequest req;
    req.base = quick_request(1);
    req.delta = Axis{0.0, 0.0, 4};
    req.gamma = Axis{0.01, 0.1, 3};
    CHECK_THROWS_AS(survival_map(req), ConfigError);
    req.delta = Axis{0.0, 1.0, 1};
    CHECK_THROWS_AS(survival_map(req), ConfigError);
    req.delta = Axis{0.0, 1.0, 3};
    req.gamma = Axis{0.0, 0.1, 3};
    CHECK_THROWS_AS(survival_map(req), ConfigError);
}

TEST_CASE("window search finds a known interior optimum") {
    const OptimumResult r =
        maximize_on_window([](double d) { return -(d - 0.4) * (d - 0.4) + 1.0; }, 0.0, 1.5);
    CHECK(std::abs(r.delta_opt - 0.4) < 1e-3);
    CHECK(r.e_res_opt == doctest::Approx(1.0));
    CHECK_FALSE(r.boundary);
    CHECK_FALSE(r.degenerate);
    CHECK(r.evaluations < 60);
}

TEST_CASE("window search flags boundary and flat landscapes") {
    const OptimumResult up = maximize_on_window([](double d) { return d; }, 0.0, 2.0);
    CHECK(up.boundary);
    CHECK(up.delta_opt == 2.0);
    const OptimumResult down = maximize_on_window([](double d) { return -d; }, 0.0, 2.0);
    CHECK(down.boundary);
    CHECK(down.delta_opt == 0.0);
    const OptimumResult flat = maximize_on_window([](double) { return 3.0; }, 0.0, 2.0);
    CHECK(flat.degenerate);
    CHECK(flat.delta_opt == 1.0);
    CHECK_THROWS_AS(maximize_on_window([](double d) { return d; }, 0.0, 0.0), DomainError);
    SearchOptions coarse;
    coarse.resolution = 2;
    CHECK_THROWS_AS(maximize_on_window([](double d) { return d; }, 0.0, 1.0, coarse), DomainError);
}

TEST_CASE("optimal detuning on real dynamics dominates the window edges") {
    SimulationRequest base = quick_request(2);
    base.grid = TimeGrid{0.0, 4.0, 0.01};
    TelegraphNoise noise;
    noise.n_traj = 16;
    noise.seed = 5;
    const double window = 3.0 * delta_star(2, 0.1, 0.05);
    SearchOptions opts;
    opts.resolution = 5;
    opts.tolerance = 1e-3;
    const OptimumResult r = optimal_detuning(2, noise, base, window, opts);
    auto e_res_at = [&](double d) {
        SimulationRequest req = base;
        req.environment = noise;
        req.system.delta = d;
        return simulate(req).e_res;
    };
    CHECK(r.e_res_opt >= e_res_at(0.0));
    CHECK(r.e_res_opt >= e_res_at(window));
    CHECK(r.delta_opt >= 0.0);
    CHECK(r.delta_opt <= window);
}

TEST_CASE("power-law fit") {
    const std::vector<double> n{1, 2, 3, 4, 8};
    std::vector<double> d;
    for (double x : n) d.push_back(2.0 * std::sqrt(x));
    const FitResult exact = power_law_fit(n, d);
    CHECK(std::abs(exact.beta - 0.5) < 1e-12);
    CHECK(exact.r_squared == doctest::Approx(1.0));
    CHECK(exact.log_intercept == doctest::Approx(std::log(2.0)));
    CHECK(exact.beta_stderr < 1e-12);

    std::vector<double> ns, ds;
    for (std::size_t k = 1; k <= 4; ++k) {
        ns.push_back(static_cast<double>(k));
        ds.push_back(delta_star(k, 0.1, 0.05));
    }
    const FitResult star = power_law_fit(ns, ds);
    CHECK(std::abs(star.beta - 0.5) < 1e-12);
    CHECK(std::abs(star.r_squared - 1.0) < 1e-12);

    // Noisy inputs: compare with the closed-form OLS slope.
    const std::vector<double> xn{1, 2, 3, 4};
    const std::vector<double> yn{1.0, 1.3, 1.4, 1.7};
    const FitResult noisy = power_law_fit(xn, yn);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double lx = std::log(xn[i]), ly = std::log(yn[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    CHECK(noisy.beta == doctest::Approx((4 * sxy - sx * sy) / (4 * sxx - sx * sx)).epsilon(1e-12));
    CHECK(noisy.r_squared > 0.0);
    CHECK(noisy.r_squared < 1.0);
    CHECK(noisy.beta_stderr > 0.0);

    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(power_law_fit(one, one), DomainError);
    const std::vector<double> pair{1.0, 2.0};
    const std::vector<double> bad{1.0, -2.0};
    CHECK_THROWS_AS(power_law_fit(pair, bad), DomainError);
    const std::vector<double> same{2.0, 2.0};
    CHECK_THROWS_AS(power_law_fit(same, pair), DomainError);
    CHECK_THROWS_AS(power_law_fit(pair, n), ShapeError);
}

TEST_CASE("scaling study without environment presses against the window edge") {
    SimulationRequest base = quick_request(1);
    base.grid = TimeGrid{0.0, 4.0, 0.01};
    SearchOptions opts;
    opts.resolution = 4;
    opts.tolerance = 1e-3;
    const std::vector<std::size_t> n_list{1, 2};
    const ScalingStudy study = scaling_study(base, n_list, 3.0, opts);
    REQUIRE(study.rows.size() == 2);
    for (const auto& row : study.rows) {
        CHECK(row.optimum.boundary);
        CHECK(row.optimum.delta_opt == doctest::Approx(3.0 * row.delta_star));
    }
    // Edges scale with the analytic detuning, so the fit recovers its exponent.
    CHECK(study.fit.beta == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(study.analytic_beta == 0.5);
    const std::vector<std::size_t> single{1};
    CHECK_THROWS_AS(scaling_study(base, single, 3.0, opts), DomainError);
}

TEST_CASE("RWA ceiling") {
    CHECK(rwa_report(0.1, 1.0, 10, 0.1).n_max == 1);
    CHECK(rwa_report(0.01, 1.0, 10, 0.1).n_max == 100);
    const RwaReport r = rwa_report(0.1, 1.0, 100, 0.1);
    REQUIRE(r.ratio.size() == 100);
    CHECK(r.ratio.back() == doctest::Approx(1.0));
    for (std::size_t k = 1; k < r.ratio.size(); ++k) {
        CHECK(r.ratio[k] > r.ratio[k - 1]);
        CHECK(r.ratio[k] == 0.1 * std::sqrt(static_cast<double>(k + 1)));
    }
    for (double g : {0.003, 0.02, 0.033, 0.05, 0.07}) {
        const RwaReport q = rwa_report(g, 1.0, 0, 0.1);
        const auto ratio = [&](std::size_t n) { return g * std::sqrt(static_cast<double>(n)); };
        CHECK(ratio(q.n_max) <= 0.1 * (1 + 1e-12));
        CHECK(ratio(q.n_max + 1) > 0.1);
    }
    CHECK(rwa_report(0.5, 1.0, 0, 0.1).n_max == 0);
    CHECK_THROWS_AS(rwa_report(0.0, 1.0, 10, 0.1), DomainError);
    CHECK_THROWS_AS(rwa_report(0.1, 0.0, 10, 0.1), DomainError);
    CHECK_THROWS_AS(rwa_report(0.1, 1.0, 10, 0.0), DomainError);
}

TEST_CASE("table harness detuning column and layout") {
    Table1Request req;
    req.base = quick_request(1);
    req.base.grid = TimeGrid{0.0, 2.0, 0.01};
    req.env_a.n_traj = 4;
    const auto start = std::chrono::steady_clock::now();
    const auto rows = table1_harness(req);
    const double expected[] = {0.3162, 0.4472, 0.5477, 0.6325};
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(rows[i].n == i + 1);
        CHECK(std::abs(rows[i].delta_star - expected[i]) < 5e-5);
        for (const auto* cols : {&rows[i].env_a, &rows[i].env_b}) {
            CHECK(cols->improvement ==
                  doctest::Approx((cols->e_res_filtered - cols->e_res_unfiltered) / cols->e_res_unfiltered));
            CHECK(cols->blp_filtered >= 0.0);
            CHECK(cols->blp_unfiltered >= 0.0);
        }
    }
    CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(60));
}

TEST_CASE("collective advantage study") {
    SimulationRequest base = quick_request(1);
    base.grid = TimeGrid{0.0, 4.0, 0.01};
    const std::vector<std::size_t> n_list{1, 2, 3};
    const auto rows = advantage_study(base, n_list);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].a_n == doctest::Approx(1.0));
    for (const auto& row : rows) {
        CHECK(row.a_n == doctest::Approx(row.e_n / (static_cast<double>(row.n) * rows[0].e_n)));
    }
    const std::vector<std::size_t> no_reference{2, 3};
    CHECK_THROWS_AS(advantage_study(base, no_reference), DomainError);
}

}
