// Copyright 2026 The fracrobin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "fracrobin/fields.hpp"
#include "fracrobin/problem.hpp"

namespace fracrobin {

// Reads a JSON problem config and applies defaults. Throws ParseError on
// malformed JSON or a value of the wrong type (with line and field), and
// SchemaError on unknown or missing keys.
ProblemSpec load_config(const std::filesystem::path& path);
ProblemSpec parse_config(const std::string& text);

// Field descriptors: a bare number is a constant, otherwise an object with
// "preset" in {constant, affine, sinusoidal, separable-sum}.
ScalarField parse_scalar_field(const nlohmann::json& j, const std::string& where);
ExponentField2 parse_exponent_field(const nlohmann::json& j,
                                    const std::string& where);

nlohmann::json to_json(const ScalarField& f);
nlohmann::json to_json(const ExponentField2& f);
nlohmann::json to_json(const Box& b);
nlohmann::json to_json(const ProblemSpec& spec);

}  // namespace fracrobin
