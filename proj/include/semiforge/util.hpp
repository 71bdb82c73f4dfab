// Copyright 2026 The semiforge Authors.
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
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace semiforge {

using Json = nlohmann::json;

std::vector<std::string> split_whitespace(std::string_view text);
std::string_view trim(std::string_view text);
// Trim, then collapse every internal whitespace run to a single space.
std::string collapse_whitespace(std::string_view text);
std::string to_lower(std::string_view text);
bool starts_with_icase(std::string_view text, std::string_view prefix);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// Newline-delimited JSON. Blank lines are skipped on read; `on_bad_line`
// receives (line number, message) for lines that fail to parse, otherwise
// a parse failure is fatal.
std::vector<Json> read_jsonl(
    const std::filesystem::path& path,
    const std::function<void(std::size_t, const std::string&)>& on_bad_line =
        {});
void write_jsonl(const std::filesystem::path& path,
                 const std::vector<Json>& rows);

// Compact single-line dump with sorted keys; invalid UTF-8 is replaced
// rather than thrown on, since corpus text is untrusted.
std::string dump_line(const Json& value);

std::string sha256_hex(std::string_view data);

}  // namespace semiforge
