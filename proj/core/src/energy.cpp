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
#include <random>

#include "fracrobin/operators.hpp"
#include "fracrobin/solver.hpp"

namespace fracrobin {

double energy(const GridFunction& u, const DiscreteProblem& problem,
              double lambda) {
  const auto v = u.values();
  double pairs = 0.0;
  for (const PairEntry& e : problem.kernel().entries) {
    const double d = std::abs(v[e.i] - v[e.j]);
    if (d != 0.0) pairs += e.weight * std::pow(d, e.exponent) / e.exponent;
  }
  const auto m = problem.measure();
  const auto pb = problem.pbar();
  const auto q = problem.q();
  const auto V = problem.V();
  const auto beta = problem.beta();
  const Mesh& mesh = problem.mesh();
  double local = 0.0;
  double source = 0.0;
  for (std::uint32_t k : mesh.interior_ids()) {
    const double a = std::abs(v[k]);
    if (a == 0.0) continue;
    local += m[k] * std::pow(a, pb[k]) / pb[k];
    source += m[k] * V[k] * std::pow(a, q[k]) / q[k];
  }
  for (std::uint32_t k : mesh.collar_ids()) {
    const double a = std::abs(v[k]);
    if (a != 0.0 && beta[k] != 0.0) {
      local += m[k] * beta[k] * std::pow(a, pb[k]) / pb[k];
    }
  }
  return pairs + local - lambda * source;
}

GridFunction energy_gradient(const GridFunction& u,
                             const DiscreteProblem& problem, double lambda) {
  const auto v = u.values();
  std::vector<double> g(v.size(), 0.0);
  for (const PairEntry& e : problem.kernel().entries) {
    const double f = e.weight * phi_p(v[e.i] - v[e.j], e.exponent);
    g[e.i] += f;
    g[e.j] -= f;
  }
  const auto m = problem.measure();
  const auto pb = problem.pbar();
  const auto q = problem.q();
  const auto V = problem.V();
  const auto beta = problem.beta();
  const Mesh& mesh = problem.mesh();
  for (std::uint32_t k : mesh.interior_ids()) {
    g[k] += m[k] * (phi_p(v[k], pb[k]) - lambda * V[k] * phi_p(v[k], q[k]));
  }
  for (std::uint32_t k : mesh.collar_ids()) {
    if (beta[k] != 0.0) g[k] += m[k] * beta[k] * phi_p(v[k], pb[k]);
  }
  return GridFunction(u.mesh_ptr(), std::move(g));
}

double source_pairing(const GridFunction& u, const GridFunction& v,
                      const DiscreteProblem& problem, double lambda) {
  const auto m = problem.measure();
  const auto q = problem.q();
  const auto V = problem.V();
  double sum = 0.0;
  for (std::uint32_t k : problem.mesh().interior_ids()) {
    sum += m[k] * V[k] * phi_p(u[k], q[k]) * v[k];
  }
  return lambda * sum;
}

double modular_derivative_pairing(const GridFunction& u,
                                  const DiscreteProblem& problem) {
  const auto v = u.values();
  double sum = 0.0;
  for (const PairEntry& e : problem.kernel().entries) {
    const double d = std::abs(v[e.i] - v[e.j]);
    if (d != 0.0) sum += 2.0 * e.weight * std::pow(d, e.exponent);
  }
  const auto m = problem.measure();
  const auto pb = problem.pbar();
  const auto beta = problem.beta();
  const auto g = problem.g();
  const Mesh& mesh = problem.mesh();
  for (std::uint32_t k : mesh.interior_ids()) {
    if (v[k] != 0.0) sum += m[k] * std::pow(std::abs(v[k]), pb[k]);
  }
  for (std::uint32_t k : mesh.collar_ids()) {
    const double w = std::abs(g[k]) + beta[k];
    if (v[k] != 0.0 && w != 0.0) {
      sum += m[k] * w * std::pow(std::abs(v[k]), pb[k]);
    }
  }
  return sum;
}

GridFunction random_grid_function(const DiscreteProblem& problem,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(problem.mesh().size());
  for (double& x : v) x = dist(rng);
  return GridFunction(problem.mesh_ptr(), std::move(v));
}

}  // namespace fracrobin
