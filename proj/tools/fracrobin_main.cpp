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


#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fracrobin/config.hpp"
#include "fracrobin/errors.hpp"
#include "fracrobin/pipeline.hpp"

namespace {

using fracrobin::Stage;
using nlohmann::json;

struct Flags {
  std::string config;
  std::optional<int> resolution;
  std::optional<std::string> lambda;
  std::optional<std::uint64_t> seed;
  bool deterministic = false;
  std::optional<std::string> out;
};

double number_or_nan(const json& j, const char* key) {
  const auto it = j.find(key);
  return it != j.end() && it->is_number() ? it->get<double>() : std::nan("");
}

void print_identity_table(const json& check) {
  std::printf("%-18s %16s %16s %12s %10s\n", "identity", "lhs", "rhs",
              "residual", "converged");
  for (const char* name : {"divergence", "green"}) {
    const auto it = check.find(name);
    if (it == check.end()) continue;
    std::printf("%-18s %16.9e %16.9e %12.4e %10s\n", name,
                number_or_nan(*it, "lhs"), number_or_nan(*it, "rhs"),
                number_or_nan(*it, "rel_residual"),
                it->value("converged", false) ? "yes" : "no");
  }
  if (const auto it = check.find("green_reduction"); it != check.end()) {
    std::printf("%-18s %16.9e %16.9e %12.4e %10s\n", "green_reduction",
                number_or_nan(*it, "green_rhs"),
                number_or_nan(*it, "scaled_divergence"),
                number_or_nan(*it, "gap"), "-");
  }
}

void print_verdicts(const json& verdicts) {
  for (const auto& v : verdicts) {
    std::printf("%-8s %-40s %14.6e  %s\n",
                v.value("verdict", std::string()).c_str(),
                v.value("name", std::string()).c_str(),
                number_or_nan(v, "witness"),
                v.value("detail", std::string()).c_str());
  }
}

int run(const Flags& flags, std::vector<Stage> stages) {
  fracrobin::ProblemSpec spec = fracrobin::load_config(flags.config);
  if (flags.resolution) spec.resolution = *flags.resolution;
  if (flags.lambda) {
    if (*flags.lambda == "auto") {
      spec.lambda.reset();
    } else {
      std::size_t used = 0;
      const double value = std::stod(*flags.lambda, &used);
      if (used != flags.lambda->size()) {
        throw fracrobin::InvalidArgument("--lambda expects a number or auto");
      }
      spec.lambda = value;
    }
  }
  if (flags.seed) spec.seed = *flags.seed;
  if (flags.deterministic) spec.deterministic = true;

  fracrobin::PipelineOptions options;
  if (flags.out) options.out_dir = *flags.out;
  const fracrobin::DiagnosticsReport rep =
      fracrobin::run_pipeline(spec, stages, options);

  print_verdicts(rep.body.at("verdicts"));
  if (const auto it = rep.body.find("check"); it != rep.body.end()) {
    std::printf("\n");
    print_identity_table(*it);
  }
  const json& summary = rep.body.at("summary");
  std::printf("\n%d pass, %d fail, %d reported\n", summary.value("pass", 0),
              summary.value("fail", 0), summary.value("reported", 0));
  if (flags.out) std::printf("wrote %s/diagnostics.json\n", flags.out->c_str());
  return rep.any_fail() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional p(x,y)-Laplacian Robin problem diagnostics"};
  app.require_subcommand(1);
  Flags flags;

  struct Command {
    const char* name;
    const char* help;
    std::vector<Stage> stages;
  };
  const std::vector<Command> commands{
      {"validate", "check the problem hypotheses", {Stage::validate}},
      {"check", "run the invariant and identity suites", {Stage::check}},
      {"solve", "compute a weak solution", {Stage::solve}},
      {"report", "run every stage and write all outputs",
       {Stage::validate, Stage::check, Stage::solve}},
  };
  std::vector<CLI::App*> subs;
  for (const Command& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("config", flags.config, "problem config (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--resolution", flags.resolution, "cells per unit length")
        ->check(CLI::PositiveNumber);
    sub->add_option("--lambda", flags.lambda, "lambda value or 'auto'");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_flag("--deterministic", flags.deterministic,
                  "sequential summation order");
    sub->add_option("--out", flags.out, "output directory");
    subs.push_back(sub);
  }
  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (subs[k]->parsed()) return run(flags, commands[k].stages);
    }
  } catch (const fracrobin::ParseError& e) {
    std::cerr << "parse error at line " << e.line() << " (" << e.field()
              << "): " << e.what() << "\n";
  } catch (const fracrobin::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
