// Copyright 2026 The InnerMerit Authors
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
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace innermerit {

// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(std::string_view data);

// ASCII case folding; regions and other free-text keys compare through this.
std::string fold_case(std::string_view text);

std::string trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

// Reads a whole file. Throws IoFailure.
std::string read_file(const std::string& path);

// Writes `contents` to a sibling temp file and renames it over `path`, so
// readers see either the old or the new file. Throws IoFailure.
void write_file_atomic(const std::string& path, std::string_view contents);

// Appends one line and flushes. Throws IoFailure.
void append_line(const std::string& path, std::string_view line);

// Key-value text configuration:
//
//   # comment
//   weight.code = 10
//   tier.names  = Bronze, Silver, Gold
//
// Keys are unique; blank lines and `#` comments are ignored.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(std::string_view text);

std::int64_t parse_int64(std::string_view text, std::string_view what);

}  // namespace innermerit
