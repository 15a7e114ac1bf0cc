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


#include <random>

#include <benchmark/benchmark.h>

#include "fracrobin/config.hpp"
#include "fracrobin/discrete_problem.hpp"
#include "fracrobin/modular.hpp"
#include "fracrobin/operators.hpp"
#include "fracrobin/quadrature.hpp"
#include "fracrobin/solver.hpp"

namespace {

using fracrobin::DiscreteProblem;
using fracrobin::GridFunction;

fracrobin::ProblemSpec variable_spec() {
  fracrobin::ProblemSpec spec = fracrobin::preset_1d();
  spec.p = fracrobin::ExponentField2::sinusoidal(2.0, 0.2, 1.0, 0.0,
                                                 fracrobin::Trig::cos);
  spec.beta = fracrobin::ScalarField::constant(0.5);
  return spec;
}

void BM_BuildPairKernel(benchmark::State& state) {
  const auto spec = variable_spec();
  const auto mesh = fracrobin::build_mesh(spec.domain, state.range(0));
  for (auto _ : state) {
    auto k = fracrobin::build_pair_kernel(*mesh, spec.p, spec.s, spec.quadrature);
    benchmark::DoNotOptimize(k.entries.data());
  }
  state.counters["pairs"] = static_cast<double>(mesh->pair_count());
}
BENCHMARK(BM_BuildPairKernel)->Arg(32)->Arg(64)->Arg(128)
    ->Unit(benchmark::kMillisecond);

void BM_EnergyAndGradient(benchmark::State& state) {
  const DiscreteProblem pr(variable_spec(), state.range(0));
  const GridFunction u = fracrobin::random_grid_function(pr, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracrobin::energy(u, pr, 0.01));
    benchmark::DoNotOptimize(fracrobin::energy_gradient(u, pr, 0.01));
  }
}
BENCHMARK(BM_EnergyAndGradient)->Arg(32)->Arg(64)->Arg(128)
    ->Unit(benchmark::kMicrosecond);

void BM_XNorm(benchmark::State& state) {
  const DiscreteProblem pr(variable_spec(), state.range(0));
  const GridFunction u = fracrobin::random_grid_function(pr, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracrobin::x_norm(u, pr).total);
  }
}
BENCHMARK(BM_XNorm)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_EquivalentNorm(benchmark::State& state) {
  const DiscreteProblem pr(variable_spec(), state.range(0));
  const GridFunction u = fracrobin::random_grid_function(pr, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fracrobin::equivalent_norm(u, pr));
  }
}
BENCHMARK(BM_EquivalentNorm)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_StrongOperator(benchmark::State& state) {
  const auto spec = variable_spec();
  const auto u = fracrobin::bump_function(
      fracrobin::Box{1, {0.15, 0.0}, {0.85, 0.0}});
  const std::vector<double> eps{1e-3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fracrobin::frac_p_laplacian(u, spec, {0.37, 0.0}, eps).value);
  }
}
BENCHMARK(BM_StrongOperator)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
