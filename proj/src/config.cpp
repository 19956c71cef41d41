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

#include "ergoshield/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ergoshield {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

double to_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
    return value;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
        throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
    }
    return value;
}

std::size_t to_count(const std::string& key, const std::string& text) {
    return static_cast<std::size_t>(to_unsigned(key, text));
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::vector<std::size_t> to_count_list(const std::string& key, const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& item : split_list(text)) {
        out.push_back(to_count(key, item));
    }
    if (out.empty()) {
        throw ConfigError(key, "expected a non-empty list of integers");
    }
    return out;
}

std::string join(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + std::to_string(values[i]);
    }
    return out;
}

std::string join(const std::vector<std::string>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + values[i];
    }
    return out;
}

void flatten_json(const nlohmann::json& node, const std::string& prefix, KeyValues& out) {
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
        }
        return;
    }
    if (node.is_array()) {
        std::string joined;
        for (std::size_t i = 0; i < node.size(); ++i) {
            const auto& item = node[i];
            joined += (i ? "," : "") + (item.is_string() ? item.get<std::string>() : item.dump());
        }
        out.emplace_back(prefix, joined);
        return;
    }
    if (node.is_string()) {
        out.emplace_back(prefix, node.get<std::string>());
    } else if (node.is_number_float()) {
        out.emplace_back(prefix, format_number(node.get<double>()));
    } else {
        out.emplace_back(prefix, node.dump());
    }
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buf, ptr);
}

KeyValues parse_ini(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) {
            line = line.substr(0, comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("", "line " + std::to_string(line_no) + ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (section.empty()) {
            throw ConfigError(key, "key outside of any [section]");
        }
        out.emplace_back(section + "." + key, trim(line.substr(eq + 1)));
    }
    return out;
}

KeyValues parse_json_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("", "JSON configuration must be an object of sections");
    }
    KeyValues out;
    flatten_json(doc, "", out);
    return out;
}

KeyValues load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("", "cannot open configuration file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const std::string t = trim(text);
    const bool json = (path.size() >= 5 && lower(path.substr(path.size() - 5)) == ".json") ||
                      (!t.empty() && t.front() == '{');
    return json ? parse_json_config(text) : parse_ini(text);
}

void RunConfig::apply(const KeyValues& values) {
    for (const auto& [key, raw] : values) {
        const std::string value = trim(raw);
        if (key == "system.n_qubits") {
            system.n_qubits = to_count(key, value);
        } else if (key == "system.omega_b") {
            system.omega_b = to_double(key, value);
        } else if (key == "system.g") {
            system.g = to_double(key, value);
        } else if (key == "system.gamma0") {
            system.gamma0 = to_double(key, value);
        } else if (key == "system.kappa") {
            system.kappa = to_double(key, value);
        } else if (key == "system.eta") {
            if (lower(value) == "gamma0") {
                system.eta.reset();
            } else {
                system.eta = to_double(key, value);
            }
        } else if (key == "system.omega_cut") {
            system.omega_cut = to_double(key, value);
        } else if (key == "system.n_cav") {
            system.n_cav = to_count(key, value);
        } else if (key == "system.representation") {
            const std::string v = lower(value);
            if (v == "reduced") {
                system.representation = Representation::reduced;
            } else if (v == "full-cavity" || v == "full_cavity") {
                system.representation = Representation::full_cavity;
            } else {
                throw ConfigError(key, "expected 'reduced' or 'full-cavity', got '" + value + "'");
            }
        } else if (key == "environment.type") {
            const std::string v = lower(value);
            if (v == "a") {
                environment_type = "A";
            } else if (v == "b") {
                environment_type = "B";
            } else if (v == "none") {
                environment_type = "none";
            } else {
                throw ConfigError(key, "unknown environment type '" + value + "' (expected A, B or none)");
            }
        } else if (key == "environment.lambda") {
            env_a.lambda_switch = to_double(key, value);
        } else if (key == "environment.delta_amp") {
            env_a.delta_amp = to_double(key, value);
        } else if (key == "environment.n_traj") {
            env_a.n_traj = to_count(key, value);
        } else if (key == "environment.seed") {
            seed = to_unsigned(key, value);
        } else if (key == "environment.n0") {
            env_b.n0 = to_double(key, value);
        } else if (key == "environment.omega_drive") {
            env_b.omega_drive = to_double(key, value);
        } else if (key == "environment.gamma_phi") {
            env_b.gamma_phi = to_double(key, value);
        } else if (key == "filter.delta") {
            const std::string v = lower(value);
            if (v == "analytic") {
                filter_mode = FilterMode::analytic;
            } else if (v == "off") {
                filter_mode = FilterMode::off;
            } else {
                filter_mode = FilterMode::numeric;
                filter_delta = to_double(key, value);
            }
        } else if (key == "time.t_max") {
            time.t_end = to_double(key, value);
        } else if (key == "time.dt") {
            time.dt = to_double(key, value);
        } else if (key == "time.positivity_stride") {
            positivity_stride = to_count(key, value);
        } else if (key == "metric.e_res_mode") {
            e_res_mode = parse_residual_mode(value);
        } else if (key == "metric.blp_pair") {
            blp_pair = parse_blp_pair(value);
        } else if (key == "output.dir") {
            output_dir = value;
        } else if (key == "output.formats") {
            formats = split_list(lower(value));
            for (const auto& f : formats) {
                if (f != "csv" && f != "json") {
                    throw ConfigError(key, "unknown output format '" + f + "'");
                }
            }
        } else if (key == "sweep.delta_min") {
            sweep_delta.min = to_double(key, value);
        } else if (key == "sweep.delta_max") {
            sweep_delta.max = to_double(key, value);
        } else if (key == "sweep.gamma_min") {
            sweep_gamma.min = to_double(key, value);
        } else if (key == "sweep.gamma_max") {
            sweep_gamma.max = to_double(key, value);
        } else if (key == "sweep.resolution") {
            sweep_delta.resolution = sweep_gamma.resolution = to_count(key, value);
        } else if (key == "sweep.delta_resolution") {
            sweep_delta.resolution = to_count(key, value);
        } else if (key == "sweep.gamma_resolution") {
            sweep_gamma.resolution = to_count(key, value);
        } else if (key == "scaling.n_list") {
            scaling_n = to_count_list(key, value);
        } else if (key == "scaling.window_factor") {
            scaling_window_factor = to_double(key, value);
        } else if (key == "scaling.resolution") {
            scaling_resolution = to_count(key, value);
        } else if (key == "scaling.tolerance") {
            scaling_tolerance = to_double(key, value);
        } else if (key == "advantage.n_list") {
            advantage_n = to_count_list(key, value);
        } else if (key == "table1.n_list") {
            table1_n = to_count_list(key, value);
        } else if (key == "rwa.n_max_scan") {
            rwa_n_max_scan = to_count(key, value);
        } else if (key == "rwa.threshold") {
            rwa_threshold = to_double(key, value);
        } else if (key == "run.jobs") {
            jobs = to_count(key, value);
        } else {
            throw ConfigError(key, "unknown configuration key");
        }
    }
}

void RunConfig::validate() const {
    system.validate();
    // Both parameter sets are checked so a bad value never lies dormant.
    ergoshield::validate(EnvironmentSpec{env_a});
    ergoshield::validate(EnvironmentSpec{env_b});
    if (environment_type == "B" && system.representation == Representation::full_cavity) {
        throw ConfigError("environment.type", "environment B is only defined for the reduced representation");
    }
    try {
        time.validate(blp_pair != BlpPair::none);
    } catch (const GridError& e) {
        throw ConfigError("time.dt", e.what());
    }
    if (filter_mode == FilterMode::numeric && !std::isfinite(filter_delta)) {
        throw ConfigError("filter.delta", "must be finite");
    }
    if (!(scaling_window_factor > 0.0)) {
        throw ConfigError("scaling.window_factor", "must be > 0");
    }
    if (!(rwa_threshold > 0.0)) {
        throw ConfigError("rwa.threshold", "must be > 0");
    }
}

EnvironmentSpec RunConfig::environment() const {
    if (environment_type == "A") {
        TelegraphNoise a = env_a;
        a.seed = seed.value_or(0);
        return a;
    }
    if (environment_type == "B") {
        return env_b;
    }
    return NoEnvironment{};
}

double RunConfig::resolved_delta() const {
    switch (filter_mode) {
        case FilterMode::analytic:
            return delta_star(system.n_qubits, system.g, system.gamma0);
        case FilterMode::numeric:
            return filter_delta;
        case FilterMode::off:
            return 0.0;
    }
    return 0.0;
}

SimulationRequest RunConfig::request() const {
    SimulationRequest req;
    req.system = system;
    req.system.delta = resolved_delta();
    req.environment = environment();
    req.filter_on = filter_mode != FilterMode::off;
    req.grid = time;
    req.e_res_mode = e_res_mode;
    req.blp_pair = blp_pair;
    req.jobs = jobs;
    req.evolve.positivity_stride = positivity_stride;
    return req;
}

KeyValues RunConfig::resolved() const {
    const auto num = [](double v) { return format_number(v); };
    KeyValues kv{
        {"system.n_qubits", std::to_string(system.n_qubits)},
        {"system.omega_b", num(system.omega_b)},
        {"system.g", num(system.g)},
        {"system.gamma0", num(system.gamma0)},
        {"system.kappa", num(system.kappa)},
        {"system.eta", num(system.effective_eta())},
        {"system.omega_cut", num(system.omega_cut)},
        {"system.n_cav", std::to_string(system.n_cav)},
        {"system.representation",
         system.representation == Representation::reduced ? "reduced" : "full-cavity"},
        {"environment.type", environment_type},
        {"environment.lambda", num(env_a.lambda_switch)},
        {"environment.delta_amp", num(env_a.delta_amp)},
        {"environment.n_traj", std::to_string(env_a.n_traj)},
        {"environment.seed", std::to_string(seed.value_or(0))},
        {"environment.n0", num(env_b.n0)},
        {"environment.omega_drive", num(env_b.omega_drive)},
        {"environment.gamma_phi", num(env_b.gamma_phi)},
        {"filter.delta", filter_mode == FilterMode::off        ? std::string("off")
                         : filter_mode == FilterMode::analytic ? "analytic"
                                                               : num(filter_delta)},
        {"filter.delta_resolved", num(resolved_delta())},
        {"time.t_max", num(time.t_end)},
        {"time.dt", num(time.dt)},
        {"time.positivity_stride", std::to_string(positivity_stride)},
        {"metric.e_res_mode", to_string(e_res_mode)},
        {"metric.blp_pair", to_string(blp_pair)},
        {"output.formats", join(formats)},
        {"sweep.delta_min", num(sweep_delta.min)},
        {"sweep.delta_max", num(sweep_delta.max)},
        {"sweep.delta_resolution", std::to_string(sweep_delta.resolution)},
        {"sweep.gamma_min", num(sweep_gamma.min)},
        {"sweep.gamma_max", num(sweep_gamma.max)},
        {"sweep.gamma_resolution", std::to_string(sweep_gamma.resolution)},
        {"scaling.n_list", join(scaling_n)},
        {"scaling.window_factor", num(scaling_window_factor)},
        {"scaling.resolution", std::to_string(scaling_resolution)},
        {"scaling.tolerance", num(scaling_tolerance)},
        {"advantage.n_list", join(advantage_n)},
        {"table1.n_list", join(table1_n)},
        {"rwa.n_max_scan", std::to_string(rwa_n_max_scan)},
        {"rwa.threshold", num(rwa_threshold)},
    };
    return kv;
}

}  // namespace ergoshield
