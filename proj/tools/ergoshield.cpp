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

#include <iostream>

#include <CLI11.hpp>

#include "ergoshield/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"ergoshield: collective quantum battery simulator"};
    app.require_subcommand(1);

    ergoshield::CliOptions options;
    std::string config;
    std::uint64_t seed = 0;
    std::size_t jobs = 1;
    std::string out_dir;

    const char* commands[][2] = {
        {"simulate", "Evolve one configuration; writes timeseries.csv and summary.json"},
        {"sweep", "Residual-ergotropy survival map over (delta, gamma0)"},
        {"scaling", "Numerical optimal detuning per N and power-law fit"},
        {"advantage", "Collective advantage A(N) at the analytic detuning"},
        {"rwa", "Rotating-wave validity ratio g sqrt(N) / omega_b"},
        {"table1", "Unfiltered versus filtered comparison in both environments"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("-c,--config", config, "INI or JSON configuration file")->check(CLI::ExistingFile);
        sub->add_option("--set", options.overrides, "Override, e.g. --set system.n_qubits=3");
        sub->add_option("--seed", seed, "Master seed for stochastic environments");
        sub->add_option("--jobs", jobs, "Worker threads (0 = all cores)");
        sub->add_option("-o,--out", out_dir, "Output directory");
        sub->callback([&options, sub] { options.command = sub->get_name(); });
    }

    CLI11_PARSE(app, argc, argv);

    for (CLI::App* sub : app.get_subcommands()) {
        if (sub->count("--config")) options.config_path = config;
        if (sub->count("--seed")) options.seed = seed;
        if (sub->count("--jobs")) options.jobs = jobs;
        if (sub->count("--out")) options.output_dir = out_dir;
    }
    return ergoshield::run(options, std::cout, std::cerr);
}
