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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracrobin/problem.hpp"
#include "fracrobin/validation.hpp"

namespace fracrobin {

enum class Stage { validate, check, solve };
std::string to_string(Stage s);
Stage parse_stage(const std::string& name);

struct PipelineOptions {
  std::optional<std::filesystem::path> out_dir;
};

struct DiagnosticsReport {
  nlohmann::json body;     // deterministic for a fixed config and seed
  nlohmann::json runtime;  // timings and build data
  std::vector<CheckEntry> verdicts;

  bool any_fail() const;
  // body plus the "runtime" block
  nlohmann::json full() const;
};

nlohmann::json to_json(const CheckEntry& e);

// Runs the stages in pipeline order (validate, check, solve); validate is
// inserted when missing. Stage errors become fail verdicts and later stages
// still run. With an output directory, writes diagnostics.json and, after a
// solve, solution.csv, energy_trace.csv and sphere_samples.csv.
DiagnosticsReport run_pipeline(const ProblemSpec& spec,
                               std::vector<Stage> stages,
                               const PipelineOptions& options = {});

}  // namespace fracrobin
