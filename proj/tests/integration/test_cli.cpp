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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ergoshield/commands.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("ERGOSHIELD_CLI");
    return p ? p : "ergoshield";
}

struct Sandbox {
    fs::path root;

    Sandbox() {
        std::random_device rd;
        root = fs::temp_directory_path() / ("ergoshield_cli_" + std::to_string(rd()));
        fs::create_directories(root);
    }
    ~Sandbox() {
        std::error_code ec;
        fs::remove_all(root, ec);
    }

    void write(const std::string& name, const std::string& text) const { std::ofstream(root / name) << text; }
};

struct Outcome {
    int code = -1;
    std::string err;
};

// Runs the CLI with `cwd` as working directory; `env` is a prefix such as "VAR=x".
Outcome run_cli(const fs::path& cwd, const std::string& args, const std::string& env = "") {
    const fs::path err_file = cwd.parent_path() / (cwd.filename().string() + ".stderr");
    const std::string cmd = "cd '" + cwd.string() + "' && env -u ERGOSHIELD_OUTPUT_DIR " + env + " '" + cli_path() +
                            "' " + args + " > /dev/null 2> '" + err_file.string() + "'";
    const int status = std::system(cmd.c_str());
    Outcome o;
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(err_file);
    std::stringstream buf;
    buf << in.rdbuf();
    o.err = buf.str();
    fs::remove(err_file);
    return o;
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string body(const fs::path& csv) {
    const std::string text = read(csv);
    const auto nl = text.find('\n');
    return nl == std::string::npos ? std::string() : text.substr(nl + 1);
}

std::string first_line(const fs::path& p) {
    const std::string text = read(p);
    return text.substr(0, text.find('\n'));
}

const char* kQuick = "--set time.t_max=2 --set time.dt=0.01";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate writes the time series, summary and manifest") {
    Sandbox box;
    const Outcome o = run_cli(box.root, std::string("simulate --set system.n_qubits=2 ") + kQuick + " -o out");
    REQUIRE(o.code == 0);
    const fs::path out = box.root / "out";
    CHECK(first_line(out / "timeseries.csv").rfind("# manifest=manifest.json run_id=", 0) == 0);
    CHECK(body(out / "timeseries.csv").rfind("t,ergotropy,energy,excitation,trace_distance\n", 0) == 0);
    const auto summary = nlohmann::json::parse(read(out / "summary.json"));
    CHECK(std::abs(summary["delta_used"].get<double>() - 0.4472) < 5e-5);
    CHECK(summary["e_res_mode"] == "integrated");
    CHECK(summary.contains("blp"));
    CHECK(summary.contains("e_res"));
    const auto manifest = nlohmann::json::parse(read(out / "manifest.json"));
    CHECK(manifest["command"] == "simulate");
    CHECK(manifest["config"]["system.gamma0"] == "0.050000000000000003");
    CHECK(manifest["seeds"]["source"] == "unused");
    CHECK(manifest.contains("wall_time_seconds"));
    CHECK(manifest["invariant_checks"]["detail"]["max_trace_drift"].get<double>() < 1e-8);
    // Every output file points at the same manifest.
    const std::string id = manifest["run_id"];
    CHECK(first_line(out / "timeseries.csv") == "# manifest=manifest.json run_id=" + id);
    CHECK(summary["run_id"] == id);
}

TEST_CASE("configuration errors exit with status 2 and name the key") {
    Sandbox box;
    Outcome o = run_cli(box.root, "simulate --set environment.type=C -o out");
    CHECK(o.code == 2);
    CHECK(o.err.find("environment.type") != std::string::npos);
    o = run_cli(box.root, "simulate --set system.bogus=1 -o out");
    CHECK(o.code == 2);
    CHECK(o.err.find("system.bogus") != std::string::npos);
    o = run_cli(box.root, "simulate --set time.dt=0.3 -o out");
    CHECK(o.code == 2);
    CHECK(o.err.find("time.dt") != std::string::npos);
    box.write("broken.json", "{\"system\": ");
    o = run_cli(box.root, "simulate -c broken.json -o out");
    CHECK(o.code == 2);
}

TEST_CASE("numerical failures exit with status 3 and report the step") {
    Sandbox box;
    const Outcome o =
        run_cli(box.root, "simulate --set system.omega_b=1e6 --set time.t_max=1 --set time.dt=0.01 -o out");
    CHECK(o.code == 3);
    CHECK(o.err.find("step") != std::string::npos);
    CHECK(o.err.find("positivity") != std::string::npos);
}

TEST_CASE("identical configuration and seed give byte-identical CSV bodies") {
    Sandbox box;
    const std::string args = std::string("simulate --set environment.type=A --set environment.n_traj=20 ") + kQuick +
                             " --seed 17";
    REQUIRE(run_cli(box.root, args + " -o first --jobs 1").code == 0);
    REQUIRE(run_cli(box.root, args + " -o second --jobs 1").code == 0);
    REQUIRE(run_cli(box.root, args + " -o third --jobs 3").code == 0);
    const std::string a = read(box.root / "first" / "timeseries.csv");
    CHECK(a == read(box.root / "second" / "timeseries.csv"));
    CHECK(a == read(box.root / "third" / "timeseries.csv"));
    REQUIRE(run_cli(box.root, args.substr(0, args.size() - 2) + "18 -o other").code == 0);
    CHECK(body(box.root / "first" / "timeseries.csv") != body(box.root / "other" / "timeseries.csv"));
}

TEST_CASE("INI and JSON configurations are equivalent") {
    Sandbox box;
    box.write("run.ini",
              "[system]\nn_qubits = 2\n[environment]\ntype = B\n[time]\nt_max = 2\ndt = 0.01\n"
              "[filter]\ndelta = 0.3\n");
    box.write("run.json",
              R"({"system": {"n_qubits": 2}, "environment": {"type": "B"}, "time": {"t_max": 2, "dt": 0.01},
                  "filter": {"delta": 0.3}})");
    REQUIRE(run_cli(box.root, "simulate -c run.ini -o ini").code == 0);
    REQUIRE(run_cli(box.root, "simulate -c run.json -o json").code == 0);
    CHECK(read(box.root / "ini" / "timeseries.csv") == read(box.root / "json" / "timeseries.csv"));
    const auto summary = nlohmann::json::parse(read(box.root / "ini" / "summary.json"));
    CHECK(summary["delta_used"] == 0.3);
    CHECK(summary["environment"] == "B");
}

TEST_CASE("output directory falls back to the environment variable and nothing leaks outside it") {
    Sandbox box;
    const fs::path work = box.root / "work";
    fs::create_directories(work);
    const fs::path target = box.root / "from_env";
    REQUIRE(run_cli(work, std::string("rwa ") + kQuick, "ERGOSHIELD_OUTPUT_DIR='" + target.string() + "'").code ==
            0);
    CHECK(fs::exists(target / "rwa.csv"));
    CHECK(fs::exists(target / "summary.json"));
    CHECK(fs::exists(target / "manifest.json"));
    CHECK(fs::is_empty(work));

    // The flag beats the variable.
    REQUIRE(run_cli(work, "rwa -o flagged", "ERGOSHIELD_OUTPUT_DIR='" + target.string() + "'").code == 0);
    CHECK(fs::exists(work / "flagged" / "rwa.csv"));
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(work)) ++entries;
    CHECK(entries == 1);
}

TEST_CASE("rwa command") {
    Sandbox box;
    REQUIRE(run_cli(box.root, "rwa --set rwa.n_max_scan=5 -o out").code == 0);
    CHECK(body(box.root / "out" / "rwa.csv") ==
          "n,ratio,usc_flag\n"
          "1,0.10000000000000001,0\n"
          "2,0.14142135623730953,1\n"
          "3,0.17320508075688773,1\n"
          "4,0.20000000000000001,1\n"
          "5,0.22360679774997899,1\n");
    CHECK(nlohmann::json::parse(read(box.root / "out" / "summary.json"))["n_max"] == 1);
}

TEST_CASE("sweep, scaling, advantage and table1 commands emit their schemas") {
    Sandbox box;
    const std::string quick = std::string(kQuick) + " --seed 3 --set environment.n_traj=4";
    REQUIRE(run_cli(box.root, "sweep " + quick +
                                  " --set sweep.delta_resolution=3 --set sweep.gamma_resolution=2 -o sweep")
                .code == 0);
    const std::string survival = body(box.root / "sweep" / "survival.csv");
    CHECK(survival.rfind("delta,gamma0,e_res\n", 0) == 0);
    CHECK(std::count(survival.begin(), survival.end(), '\n') == 1 + 6);
    CHECK(body(box.root / "sweep" / "analytic_curve.csv").rfind("gamma0,delta_star\n", 0) == 0);

    REQUIRE(run_cli(box.root, "scaling " + quick +
                                  " --set scaling.n_list=1,2 --set scaling.resolution=3 --set scaling.tolerance=0.01"
                                  " -o scaling")
                .code == 0);
    CHECK(body(box.root / "scaling" / "scaling.csv").rfind("n,delta_opt,e_res_opt,boundary_flag\n", 0) == 0);
    const auto fit = nlohmann::json::parse(read(box.root / "scaling" / "fit.json"));
    for (const char* key : {"beta", "stderr", "r2", "analytic_beta"}) {
        CHECK(fit.contains(key));
    }

    REQUIRE(run_cli(box.root, "advantage " + quick + " --set advantage.n_list=1,2 -o advantage").code == 0);
    CHECK(body(box.root / "advantage" / "advantage.csv").rfind("n,e_n,a_n\n1,", 0) == 0);

    REQUIRE(run_cli(box.root, "table1 " + quick + " --set table1.n_list=1,2 -o table1").code == 0);
    const std::string table = body(box.root / "table1" / "table1.csv");
    CHECK(table.rfind("n,delta_star,a_e_res_non,a_e_res_fil,a_ratio_pct,a_blp_non,a_blp_fil,"
                      "b_e_res_non,b_e_res_fil,b_ratio_pct,b_blp_non,b_blp_fil\n1,0.316227766016838,",
                      0) == 0);
    for (const char* dir : {"sweep", "scaling", "advantage", "table1"}) {
        CHECK(fs::exists(box.root / dir / "manifest.json"));
    }
}

TEST_CASE("stochastic runs without a seed record the drawn seed") {
    Sandbox box;
    REQUIRE(run_cli(box.root, std::string("simulate --set environment.type=A --set environment.n_traj=2 ") + kQuick +
                                  " -o out")
                .code == 0);
    const auto manifest = nlohmann::json::parse(read(box.root / "out" / "manifest.json"));
    CHECK(manifest["seeds"]["source"] == "drawn");
    CHECK(manifest["config"]["environment.seed"] ==
          std::to_string(manifest["seeds"]["environment.seed"].get<std::uint64_t>()));
}

TEST_CASE("in-process dispatch rejects unknown commands") {
    std::ostringstream out, err;
    ergoshield::CliOptions opts;
    opts.command = "plot";
    CHECK(ergoshield::run(opts, out, err) == ergoshield::kExitConfig);
    CHECK(err.str().find("plot") != std::string::npos);
}

}
