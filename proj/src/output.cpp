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

#include "ergoshield/output.hpp"

#include <cstdint>
#include <fstream>

namespace ergoshield {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("output.dir", "cannot write '" + path.string() + "'");
    }
    return out;
}

}  // namespace

std::string run_id(const std::string& command, const KeyValues& resolved) {
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    auto feed = [&](const std::string& s) {
        for (unsigned char c : s) {
            hash ^= c;
            hash *= 0x100000001B3ULL;
        }
        hash ^= 0xFF;
        hash *= 0x100000001B3ULL;
    };
    feed(command);
    for (const auto& [key, value] : resolved) {
        feed(key);
        feed(value);
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

std::string manifest_reference(const std::string& id) {
    return std::string("# manifest=") + kManifestFile + " run_id=" + id;
}

void write_csv(const std::filesystem::path& path, const std::string& id, const CsvRow& header,
               const std::vector<CsvRow>& rows) {
    std::ofstream out = open_for_write(path);
    out << manifest_reference(id) << '\n';
    auto emit = [&](const CsvRow& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    };
    emit(header);
    for (const auto& row : rows) {
        emit(row);
    }
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
    std::ofstream out = open_for_write(path);
    out << doc.dump(2) << '\n';
}

}  // namespace ergoshield
