// Copyright 2026 The qlll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qlll/instance.hpp"

namespace qlll {

/// Instance file layout:
///
///   {"n": 4,
///    "projectors": [
///      {"support": [0, 1, 2], "kind": "diagonal", "forbidden": ["101"]},
///      {"support": [1, 3], "kind": "rotated", "forbidden": ["00", "11"],
///       "rotations": [U_1, U_3]},
///      {"support": [2], "kind": "explicit", "matrix": M}],
///    "meta": {"seed": 7, "generator": "classical"}}
///
/// Matrices are arrays of rows; every complex entry is a [re, im] pair.
nlohmann::ordered_json instance_to_json(const Instance &instance);

/// Throws ParseError naming the offending field. `source_text`, when given,
/// is used to resolve the field to a line number.
Instance instance_from_json(const nlohmann::json &doc,
                            std::string_view source_text = {});

std::string serialize_instance(const Instance &instance);
Instance parse_instance(std::string_view text);

/// Throws IoError when the file cannot be written.
void save_instance(const Instance &instance, const std::filesystem::path &path);
/// Throws IoError when the file cannot be read, ParseError on bad content.
Instance load_instance(const std::filesystem::path &path);

/// 1-based line where the value at a dotted path such as
/// "projectors[2].support[0]" starts, or 0 if not found.
std::size_t locate_json_path(std::string_view text, std::string_view path);

} // namespace qlll
