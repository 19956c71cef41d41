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

#include "ergoshield/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>

#include "ergoshield/analysis.hpp"
#include "ergoshield/config.hpp"
#include "ergoshield/output.hpp"

namespace ergoshield {

namespace fs = std::filesystem;

namespace {

const char* kCommands[] = {"simulate", "sweep", "scaling", "advantage", "rwa", "table1"};

struct Context {
    RunConfig config;
    std::string id;
    fs::path dir;
    bool csv = true;
    bool json = true;
    std::vector<std::string> outputs;
    nlohmann::json invariants = nlohmann::json::object();

    void csv_file(const std::string& name, const CsvRow& header, const std::vector<CsvRow>& rows) {
        if (!csv) {
            return;
        }
        write_csv(dir / name, id, header, rows);
        outputs.push_back(name);
    }

    void json_file(const std::string& name, nlohmann::json doc) {
        if (!json) {
            return;
        }
        doc["manifest"] = kManifestFile;
        doc["run_id"] = id;
        write_json(dir / name, doc);
        outputs.push_back(name);
    }
};

std::string flag(bool b) { return b ? "1" : "0"; }

nlohmann::json invariant_json(const InvariantReport& r) {
    return {{"max_trace_drift", r.max_trace_drift},
            {"max_hermiticity_drift", r.max_hermiticity_drift},
            {"min_eigenvalue", std::isfinite(r.min_eigenvalue) ? nlohmann::json(r.min_eigenvalue) : nlohmann::json()},
            {"steps_checked", r.steps_checked},
            {"positivity_checks", r.positivity_checks}};
}

void run_simulate(Context& ctx) {
    const SimulationRequest req = ctx.config.request();
    const SimulationResult res = simulate(req);
    const bool with_pair = !res.trace_distance.empty();
    CsvRow header{"t", "ergotropy", "energy", "excitation"};
    if (with_pair) {
        header.push_back("trace_distance");
    }
    std::vector<CsvRow> rows;
    for (std::size_t k = 0; k < res.times.size(); ++k) {
        CsvRow row{format_number(res.times[k]), format_number(res.ergotropy[k]), format_number(res.energy[k]),
                   format_number(res.excitation[k])};
        if (with_pair) {
            row.push_back(format_number(res.trace_distance[k]));
        }
        rows.push_back(std::move(row));
    }
    ctx.csv_file("timeseries.csv", header, rows);
    ctx.json_file("summary.json", {{"e_res", res.e_res},
                                   {"e_res_mode", to_string(res.e_res_mode)},
                                   {"blp", res.blp ? nlohmann::json(res.blp->value) : nlohmann::json()},
                                   {"delta_used", req.filter_on ? req.system.delta : 0.0},
                                   {"environment", environment_tag(req.environment)},
                                   {"n_qubits", req.system.n_qubits}});
    ctx.invariants = invariant_json(res.invariants);
}

void run_sweep(Context& ctx) {
    SurvivalRequest sr;
    sr.base = ctx.config.request();
    sr.delta = ctx.config.sweep_delta;
    sr.gamma = ctx.config.sweep_gamma;
    sr.jobs = ctx.config.jobs;
    const SurvivalMap map = survival_map(sr);
    std::vector<CsvRow> rows;
    for (std::size_t r = 0; r < map.gamma_axis.size(); ++r) {
        for (std::size_t c = 0; c < map.delta_axis.size(); ++c) {
            rows.push_back({format_number(map.delta_axis[c]), format_number(map.gamma_axis[r]),
                            format_number(map.e_res(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)))});
        }
    }
    ctx.csv_file("survival.csv", {"delta", "gamma0", "e_res"}, rows);
    std::vector<CsvRow> curve;
    for (std::size_t r = 0; r < map.gamma_axis.size(); ++r) {
        curve.push_back({format_number(map.gamma_axis[r]), format_number(map.analytic_curve[r])});
    }
    ctx.csv_file("analytic_curve.csv", {"gamma0", "delta_star"}, curve);
}

void run_scaling(Context& ctx) {
    const RunConfig& c = ctx.config;
    const ScalingStudy study = scaling_study(c.request(), c.scaling_n, c.scaling_window_factor,
                                             SearchOptions{c.scaling_resolution, c.scaling_tolerance}, c.jobs);
    std::vector<CsvRow> rows;
    for (const auto& row : study.rows) {
        rows.push_back({std::to_string(row.n), format_number(row.optimum.delta_opt),
                        format_number(row.optimum.e_res_opt), flag(row.optimum.boundary)});
    }
    ctx.csv_file("scaling.csv", {"n", "delta_opt", "e_res_opt", "boundary_flag"}, rows);
    char display[64];
    std::snprintf(display, sizeof(display), "%.3f +/- %.3f", study.fit.beta, study.fit.beta_stderr);
    ctx.json_file("fit.json", {{"beta", study.fit.beta},
                               {"stderr", study.fit.beta_stderr},
                               {"r2", study.fit.r_squared},
                               {"log_intercept", study.fit.log_intercept},
                               {"analytic_beta", study.analytic_beta},
                               {"beta_display", display},
                               {"environment", environment_tag(c.environment())}});
}

void run_advantage(Context& ctx) {
    const RunConfig& c = ctx.config;
    const auto rows_in = advantage_study(c.request(), c.advantage_n, c.jobs);
    std::vector<CsvRow> rows;
    for (const auto& r : rows_in) {
        rows.push_back({std::to_string(r.n), format_number(r.e_n), format_number(r.a_n)});
    }
    ctx.csv_file("advantage.csv", {"n", "e_n", "a_n"}, rows);
}

void run_rwa(Context& ctx) {
    const RunConfig& c = ctx.config;
    const RwaReport report = rwa_report(c.system.g, c.system.omega_b, c.rwa_n_max_scan, c.rwa_threshold);
    std::vector<CsvRow> rows;
    for (std::size_t i = 0; i < report.n.size(); ++i) {
        rows.push_back({std::to_string(report.n[i]), format_number(report.ratio[i]),
                        flag(report.ratio[i] > report.threshold)});
    }
    ctx.csv_file("rwa.csv", {"n", "ratio", "usc_flag"}, rows);
    ctx.json_file("summary.json", {{"n_max", report.n_max}, {"threshold", report.threshold}});
}

void run_table1(Context& ctx) {
    const RunConfig& c = ctx.config;
    Table1Request tr;
    tr.base = c.request();
    tr.env_a = c.env_a;
    tr.env_a.seed = c.seed.value_or(0);
    tr.env_b = c.env_b;
    tr.n_list = c.table1_n;
    tr.jobs = c.jobs;
    const auto table = table1_harness(tr);
    InvariantReport merged;
    for (const auto& r : table) {
        merged.merge(r.invariants);
    }
    ctx.invariants = invariant_json(merged);
    std::vector<CsvRow> rows;
    auto percent = [](double ratio) { return format_number(100.0 * ratio); };
    for (const auto& r : table) {
        rows.push_back({std::to_string(r.n), format_number(r.delta_star), format_number(r.env_a.e_res_unfiltered),
                        format_number(r.env_a.e_res_filtered), percent(r.env_a.improvement),
                        format_number(r.env_a.blp_unfiltered), format_number(r.env_a.blp_filtered),
                        format_number(r.env_b.e_res_unfiltered), format_number(r.env_b.e_res_filtered),
                        percent(r.env_b.improvement), format_number(r.env_b.blp_unfiltered),
                        format_number(r.env_b.blp_filtered)});
    }
    ctx.csv_file("table1.csv",
                 {"n", "delta_star", "a_e_res_non", "a_e_res_fil", "a_ratio_pct", "a_blp_non", "a_blp_fil",
                  "b_e_res_non", "b_e_res_fil", "b_ratio_pct", "b_blp_non", "b_blp_fil"},
                 rows);
}

bool stochastic(const std::string& command, const RunConfig& config) {
    if (command == "rwa") {
        return false;
    }
    return command == "table1" || config.environment_type == "A";
}

std::string seed_source(const CliOptions& options, RunConfig& config, bool needed) {
    if (options.seed) {
        config.seed = *options.seed;
        return "flag";
    }
    if (config.seed) {
        return "config";
    }
    if (!needed) {
        // Deterministic run: nothing is drawn, so run ids stay reproducible.
        return "unused";
    }
    std::random_device rd;
    config.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    return "drawn";
}

}  // namespace

int run(const CliOptions& options, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();
    bool known = false;
    for (const char* c : kCommands) {
        known = known || options.command == c;
    }
    if (!known) {
        err << "error: unknown command '" << options.command << "'\n";
        return kExitConfig;
    }

    Context ctx;
    try {
        if (options.config_path) {
            ctx.config.apply(load_config_file(*options.config_path));
        }
        KeyValues overrides;
        for (const auto& o : options.overrides) {
            const auto eq = o.find('=');
            if (eq == std::string::npos) {
                throw ConfigError(o, "override must look like section.key=value");
            }
            overrides.emplace_back(o.substr(0, eq), o.substr(eq + 1));
        }
        ctx.config.apply(overrides);
        if (options.jobs) {
            ctx.config.jobs = *options.jobs;
        }
        if (options.output_dir) {
            ctx.config.output_dir = *options.output_dir;
        }
        if (ctx.config.output_dir.empty()) {
            const char* env_dir = std::getenv("ERGOSHIELD_OUTPUT_DIR");
            ctx.config.output_dir = env_dir && *env_dir ? env_dir : "ergoshield_out";
        }
        const std::string source =
            seed_source(options, ctx.config, stochastic(options.command, ctx.config));
        ctx.config.validate();

        ctx.dir = ctx.config.output_dir;
        std::error_code ec;
        fs::create_directories(ctx.dir, ec);
        if (ec) {
            throw ConfigError("output.dir", "cannot create '" + ctx.dir.string() + "': " + ec.message());
        }
        ctx.csv = std::find(ctx.config.formats.begin(), ctx.config.formats.end(), "csv") != ctx.config.formats.end();
        ctx.json = std::find(ctx.config.formats.begin(), ctx.config.formats.end(), "json") != ctx.config.formats.end();
        const KeyValues resolved = ctx.config.resolved();
        ctx.id = run_id(options.command, resolved);

        if (options.command == "simulate") {
            run_simulate(ctx);
        } else if (options.command == "sweep") {
            run_sweep(ctx);
        } else if (options.command == "scaling") {
            run_scaling(ctx);
        } else if (options.command == "advantage") {
            run_advantage(ctx);
        } else if (options.command == "rwa") {
            run_rwa(ctx);
        } else {
            run_table1(ctx);
        }

        nlohmann::json config_json = nlohmann::json::object();
        for (const auto& [key, value] : resolved) {
            config_json[key] = value;
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        nlohmann::json manifest{
            {"run_id", ctx.id},
            {"command", options.command},
            {"software", {{"name", "ergoshield"}, {"version", ERGOSHIELD_VERSION}}},
            {"config", config_json},
            {"seeds", {{"environment.seed", ctx.config.seed.value_or(0)}, {"source", source}}},
            {"jobs", ctx.config.jobs},
            {"wall_time_seconds", wall},
            {"invariant_checks",
             {{"gates",
               {{"trace", Tolerances::trace_drift},
                {"hermiticity", Tolerances::hermiticity_drift},
                {"min_eigenvalue", Tolerances::positivity_floor}}},
              {"status", "all runs accepted"},
              {"detail", ctx.invariants}}},
            {"outputs", ctx.outputs},
        };
        write_json(ctx.dir / kManifestFile, manifest);
        out << options.command << ": wrote " << ctx.outputs.size() << " file(s) to " << ctx.dir.string()
            << " (run_id " << ctx.id << ")\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericalFailure& e) {
        err << "numerical failure (" << e.invariant() << ", step " << e.step() << "): " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace ergoshield
