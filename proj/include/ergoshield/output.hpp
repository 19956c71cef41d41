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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergoshield/config.hpp"

namespace ergoshield {

inline constexpr const char* kManifestFile = "manifest.json";

/// Stable identifier of a run: FNV-1a over the command and the resolved
/// configuration, as 16 hex digits.
std::string run_id(const std::string& command, const KeyValues& resolved);

/// First line of every CSV output.
std::string manifest_reference(const std::string& id);

using CsvRow = std::vector<std::string>;

/// Writes the manifest reference line, the header and the rows with '\n'
/// line endings.
void write_csv(const std::filesystem::path& path, const std::string& id, const CsvRow& header,
               const std::vector<CsvRow>& rows);

/// Pretty-printed JSON with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

}  // namespace ergoshield
