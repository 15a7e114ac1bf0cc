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


#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "fracrobin/config.hpp"
#include "fracrobin/errors.hpp"
#include "fracrobin/pipeline.hpp"
#include "fracrobin/validation.hpp"

namespace fracrobin {
namespace {

namespace fs = std::filesystem;

const char* kMinimal = R"({
  "dim": 1,
  "s": 0.4,
  "exponents": {"p": {"preset": "constant", "value": 2},
                "q": {"preset": "constant", "value": 1.5},
                "r": {"preset": "constant", "value": 4}},
  "coefficients": {"V": {"preset": "constant", "value": 1},
                   "beta": {"preset": "constant", "value": 0}}
})";

TEST(LoadConfig, MinimalConfigGetsDefaults) {
  const ProblemSpec spec = parse_config(kMinimal);
  EXPECT_EQ(spec.dim, 1);
  EXPECT_EQ(spec.resolution, 64);
  EXPECT_DOUBLE_EQ(spec.domain.interior.lower[0], 0.0);
  EXPECT_DOUBLE_EQ(spec.domain.interior.upper[0], 1.0);
  EXPECT_DOUBLE_EQ(spec.domain.collar_radius, 1.0);
  EXPECT_DOUBLE_EQ(spec.solver.tol_grad, 1e-8);
  EXPECT_FALSE(spec.lambda.has_value());
  EXPECT_DOUBLE_EQ(spec.p({0.2, 0}, {0.9, 0}), 2.0);
  EXPECT_DOUBLE_EQ(spec.q({0.5, 0}), 1.5);
}

TEST(LoadConfig, UnknownKeyIsNamed) {
  std::string text = kMinimal;
  text.insert(text.find("\"dim\""), "\"gamma\": 3, ");
  try {
    parse_config(text);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    ASSERT_EQ(e.keys().size(), 1u);
    EXPECT_EQ(e.keys()[0], "gamma");
    EXPECT_NE(std::string(e.what()).find("gamma"), std::string::npos);
  }
}

TEST(LoadConfig, MissingKeyIsListed) {
  const std::string text = R"({"dim": 1, "s": 0.4})";
  try {
    parse_config(text);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_FALSE(e.keys().empty());
  }
}

TEST(LoadConfig, MalformedJsonReportsTheLine) {
  const std::string text = "{\n  \"dim\": 1,\n  \"s\": ,\n}";
  try {
    parse_config(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(LoadConfig, WrongTypeNamesTheField) {
  std::string text = kMinimal;
  text.replace(text.find("0.4"), 3, "\"x\"");
  try {
    parse_config(text);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "s");
  }
}

TEST(LoadConfig, BadSLoadsButFailsValidation) {
  std::string text = kMinimal;
  text.replace(text.find("0.4"), 3, "1.2");
  const ProblemSpec spec = parse_config(text);
  EXPECT_DOUBLE_EQ(spec.s, 1.2);
  const ValidationReport r = validate_problem(spec);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.find("s_range")->verdict, Verdict::fail);
}

TEST(LoadConfig, ShippedConfigsRoundTrip) {
  for (const char* name : {"preset_1d.json", "example_2d.json"}) {
    const ProblemSpec spec = load_config(fs::path(FRACROBIN_CONFIG_DIR) / name);
    const ProblemSpec again = parse_config(to_json(spec).dump());
    EXPECT_EQ(to_json(spec), to_json(again)) << name;
  }
  const ProblemSpec preset = load_config(fs::path(FRACROBIN_CONFIG_DIR) / "preset_1d.json");
  EXPECT_EQ(to_json(preset), to_json(preset_1d()));
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fracrobin_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(RunPipeline, ValidateOnlyWritesTheReport) {
  const fs::path dir = fresh_dir("validate");
  const DiagnosticsReport rep =
      run_pipeline(preset_1d(), {Stage::validate}, {dir});
  EXPECT_FALSE(rep.any_fail());
  EXPECT_EQ(rep.body["summary"]["fail"], 0);
  EXPECT_EQ(rep.body["summary"]["reported"], 0);
  std::size_t files = 0;
  for (const auto& f : fs::directory_iterator(dir)) {
    ++files;
    EXPECT_EQ(f.path().filename(), "diagnostics.json");
  }
  EXPECT_EQ(files, 1u);
  for (const auto& v : rep.body["verdicts"]) {
    EXPECT_TRUE(v.contains("witness"));
    EXPECT_TRUE(v["verdict"] == "pass" || v["verdict"] == "fail" ||
                v["verdict"] == "reported");
  }
}

TEST(RunPipeline, SolveInsertsValidateAndWritesFourFiles) {
  ProblemSpec spec = preset_1d();
  spec.resolution = 32;
  const fs::path dir = fresh_dir("solve");
  const DiagnosticsReport rep = run_pipeline(spec, {Stage::solve}, {dir});
  EXPECT_EQ(rep.body["stages"], nlohmann::json({"validate", "solve"}));
  ASSERT_FALSE(rep.body["notes"].empty());
  EXPECT_NE(rep.body["notes"][0].get<std::string>().find("validate"),
            std::string::npos);
  EXPECT_FALSE(rep.any_fail());
  for (const char* f : {"diagnostics.json", "solution.csv", "energy_trace.csv",
                        "sphere_samples.csv"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  std::ifstream csv(dir / "solution.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header.rfind("cell_index", 0), 0u);
  EXPECT_TRUE(rep.body["solve"]["regime"]["lambda_auto"].get<bool>());
}

TEST(RunPipeline, FailedValidationSkipsLaterStages) {
  ProblemSpec spec = preset_1d();
  spec.s = 0.5;
  const DiagnosticsReport rep = run_pipeline(spec, {Stage::check, Stage::solve});
  EXPECT_TRUE(rep.any_fail());
  EXPECT_TRUE(rep.body["check"].contains("skipped"));
  EXPECT_TRUE(rep.body["solve"].contains("skipped"));
}

TEST(RunPipeline, DeterministicBodies) {
  ProblemSpec spec = preset_1d();
  spec.resolution = 32;
  const auto a = run_pipeline(spec, {Stage::solve});
  const auto b = run_pipeline(spec, {Stage::solve});
  EXPECT_EQ(a.body.dump(), b.body.dump());
  EXPECT_FALSE(a.body.contains("runtime"));
  EXPECT_TRUE(a.full().contains("runtime"));
}

TEST(Stages, NamesRoundTrip) {
  for (Stage s : {Stage::validate, Stage::check, Stage::solve}) {
    EXPECT_EQ(parse_stage(to_string(s)), s);
  }
  EXPECT_THROW(parse_stage("plot"), InvalidArgument);
}

}  // namespace
}  // namespace fracrobin
