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
#include <ostream>
#include <string>
#include <vector>

namespace ergoshield {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitNumerical = 3,
};

struct CliOptions {
    std::string command;  // simulate, sweep, scaling, advantage, rwa, table1
    std::optional<std::string> config_path;
    std::vector<std::string> overrides;  // "section.key=value"
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> jobs;
    std::optional<std::string> output_dir;
};

/// Resolve the configuration, run one command and write its outputs plus
/// manifest.json into the output directory. Diagnostics go to `err`.
int run(const CliOptions& options, std::ostream& out, std::ostream& err);

}  // namespace ergoshield
