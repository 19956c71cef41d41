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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ergoshield/analysis.hpp"
#include "ergoshield/dynamics.hpp"

namespace ergoshield {

/// Flat "section.key" -> raw value pairs in the order they were read.
using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// INI-style text: [section] headers, key = value lines, '#' or ';' comments.
KeyValues parse_ini(const std::string& text);

/// JSON object of section objects; arrays become comma-separated lists.
KeyValues parse_json_config(const std::string& text);

/// Picks the parser from the extension (.json) or the first character.
KeyValues load_config_file(const std::string& path);

enum class FilterMode { numeric, analytic, off };

struct RunConfig {
    SystemSpec system;

    std::string environment_type = "none";
    TelegraphNoise env_a;
    ThermalDrive env_b;
    std::optional<std::uint64_t> seed;

    FilterMode filter_mode = FilterMode::analytic;
    double filter_delta = 0.0;

    TimeGrid time;
    std::size_t positivity_stride = 1;

    ResidualMode e_res_mode = ResidualMode::integrated;
    BlpPair blp_pair = BlpPair::superposition;

    std::string output_dir;
    std::vector<std::string> formats{"csv", "json"};

    Axis sweep_delta{0.0, 1.5, 8};
    Axis sweep_gamma{0.01, 0.1, 8};

    std::vector<std::size_t> scaling_n{1, 2, 3, 4};
    double scaling_window_factor = 3.0;
    std::size_t scaling_resolution = 9;
    double scaling_tolerance = 1e-4;

    std::vector<std::size_t> advantage_n{1, 2, 3, 4};
    std::vector<std::size_t> table1_n{1, 2, 3, 4};

    std::size_t rwa_n_max_scan = 100;
    double rwa_threshold = 0.1;

    std::size_t jobs = 1;

    /// Apply key/value pairs on top of the current values. Unknown keys or
    /// unparsable values throw ConfigError naming the key.
    void apply(const KeyValues& values);

    /// Cross-field checks (grid integrality, environment parameters, ...).
    void validate() const;

    EnvironmentSpec environment() const;

    /// Detuning used by `simulate`: the numeric value, delta_star for
    /// "analytic", 0 when the filter is off.
    double resolved_delta() const;

    SimulationRequest request() const;

    /// Every setting in canonical key order with fully resolved values.
    KeyValues resolved() const;
};

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_number(double value);

}  // namespace ergoshield
