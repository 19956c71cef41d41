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

#include <cstdint>
#include <numbers>
#include <string>
#include <variant>

namespace ergoshield {

/// No bath beyond the collective decay channel.
struct NoEnvironment {};

/// Environment A: the transition frequency jumps by +/- delta_amp following a
/// random telegraph process; the state is averaged over n_traj paths.
struct TelegraphNoise {
    double lambda_switch = 0.05;
    double delta_amp = 0.1;
    std::size_t n_traj = 200;
    std::uint64_t seed = 0;
};

/// Environment B: thermal emission/absorption with a periodically driven
/// occupation n0 (1 + sin^2(omega_drive t)) plus collective Jz dephasing.
struct ThermalDrive {
    double n0 = 0.1;
    double omega_drive = std::numbers::pi / 5.0;
    double gamma_phi = 0.02;

    double occupation(double t) const;
};

using EnvironmentSpec = std::variant<NoEnvironment, TelegraphNoise, ThermalDrive>;

/// "none", "A" or "B".
std::string environment_tag(const EnvironmentSpec& env);

/// Throws ConfigError naming the offending field.
void validate(const EnvironmentSpec& env);

}  // namespace ergoshield
