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

#include "fracrobin/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "fracrobin/modular.hpp"
#include "fracrobin/operators.hpp"
#include "fracrobin/solver.hpp"

namespace fracrobin {
namespace {

constexpr double kRelTol = 1e-8;

// (bound - value) / bound when value falls below a lower bound, zero otherwise.
double below(double value, double bound) {
  return value < bound ? (bound - value) / bound : 0.0;
}

double above(double value, double bound) {
  return value > bound ? (value - bound) / bound : 0.0;
}

std::vector<double> random_values(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

std::vector<ScalarField> lebesgue_presets() {
  return {ScalarField::constant(2.0),
          ScalarField::affine(2.0, {1.0, 0.5}),
          ScalarField::sinusoidal(2.2, 0.6, 3.0, 0.4)};
}

LebesgueSuite lebesgue_suite(const Mesh& mesh, const ScalarField& p,
                             int samples, std::uint64_t seed) {
  LebesgueSuite s;
  s.samples = samples;
  const NodalModular rho = nodal_modular(mesh, p, nullptr, RegionSel::interior);
  const auto [lo, hi] =
      std::minmax_element(rho.exponents.begin(), rho.exponents.end());
  const double pm = *lo;
  const double pp = *hi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < samples; ++k) {
    std::vector<double> u = random_values(mesh.size(), rng);
    const double n0 = nodal_luxemburg(rho, u);
    std::vector<double> unit_u(u);
    for (double& x : unit_u) x /= n0;
    s.unit_dev = std::max(s.unit_dev, std::abs(rho(unit_u) - 1.0));

    for (bool big : {true, false}) {
      const double target = big ? 1.0 + 3.0 * unit(rng) : 0.05 + 0.9 * unit(rng);
      std::vector<double> w(unit_u);
      for (double& x : w) x *= target;
      const double n = nodal_luxemburg(rho, w);
      const double r = rho(w);
      if (big) {
        s.worst_above = std::max({s.worst_above, below(r, std::pow(n, pm)),
                                  above(r, std::pow(n, pp))});
      } else {
        s.worst_below = std::max({s.worst_below, below(r, std::pow(n, pp)),
                                  above(r, std::pow(n, pm))});
      }
    }
  }
  s.passed = s.unit_dev <= kRelTol && s.worst_above <= kRelTol &&
             s.worst_below <= kRelTol;
  return s;
}

XModularSuite x_modular_suite(const DiscreteProblem& problem, int samples,
                              std::uint64_t seed) {
  XModularSuite s;
  s.samples = samples;
  const double pm = problem.discrete_p_minus();
  const double pp = problem.discrete_p_plus();
  const double c4 = std::pow(4.0, pp - 1.0);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Worst relative violation of the (ii)/(iii) chain for norm value n.
  const auto violation = [&](double r, double n) {
    if (n < 1.0) {
      return std::max(below(r, std::pow(n, pp) / c4),
                      above(r, 4.0 * std::pow(n, pm)));
    }
    return below(r, std::pow(n, pm));
  };

  for (int k = 0; k < samples; ++k) {
    GridFunction u(problem.mesh_ptr(), random_values(problem.mesh().size(), rng));
    const double mu0 = equivalent_norm(u, problem);
    const GridFunction unit_u = u * (1.0 / mu0);
    s.unit_dev = std::max(s.unit_dev, std::abs(x_modular(unit_u, problem) - 1.0));

    for (bool big : {true, false}) {
      const double target = big ? 1.0 + 3.0 * unit(rng) : 0.05 + 0.9 * unit(rng);
      const GridFunction w = unit_u * target;
      const double r = x_modular(w, problem);
      if (violation(r, equivalent_norm(w, problem)) > kRelTol) ++s.hard_failures;
      const double vx = violation(r, x_norm(w, problem).total);
      s.x_worst = std::max(s.x_worst, vx);
      if (vx > kRelTol) ++s.x_violations;
      if (vx > 2.0 * kRelTol) ++s.x_violations_beyond_2tol;
    }
  }
  s.passed = s.unit_dev <= kRelTol && s.hard_failures == 0;
  return s;
}

NormAxioms norm_axioms(const DiscreteProblem& problem, int pairs,
                       std::uint64_t seed) {
  NormAxioms ax;
  ax.pairs = pairs;
  const NodalModular interior = x_part_modular(problem, XPart::interior);
  const std::vector<std::function<double(const GridFunction&)>> norms{
      [&](const GridFunction& u) { return nodal_luxemburg(interior, u.values()); },
      [&](const GridFunction& u) {
        return gagliardo_seminorm(u, problem.kernel());
      },
      [&](const GridFunction& u) { return x_norm(u, problem).total; },
      [&](const GridFunction& u) { return equivalent_norm(u, problem); }};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> cdist(-3.0, 3.0);
  const std::size_t n = problem.mesh().size();
  for (int k = 0; k < pairs; ++k) {
    const GridFunction u(problem.mesh_ptr(), random_values(n, rng));
    const GridFunction v(problem.mesh_ptr(), random_values(n, rng));
    const double c = cdist(rng);
    for (const auto& N : norms) {
      const double nu = N(u);
      const double ncu = N(u * c);
      const double scale = std::max(ncu, 1e-300);
      ax.worst_homogeneity =
          std::max(ax.worst_homogeneity, std::abs(ncu - std::abs(c) * nu) / scale);
      const double nuv = N(u + v);
      ax.worst_triangle =
          std::max(ax.worst_triangle, (nuv - nu - N(v)) / std::max(nuv, 1e-300));
    }
  }
  ax.passed = ax.worst_homogeneity <= 1e-9 && ax.worst_triangle <= 1e-9;
  return ax;
}

CheckEntry norm_modular_convergence(const DiscreteProblem& problem,
                                    std::uint64_t seed) {
  const GridFunction w = random_grid_function(problem, seed);
  bool monotone = true;
  double prev_norm = INFINITY;
  double prev_mod = INFINITY;
  double last_mod = 0.0;
  for (int n = 1; n <= 20; ++n) {
    const GridFunction d = w * (1.0 / n);
    const double nx = x_norm(d, problem).total;
    const double m = x_modular(d, problem);
    if (!(nx < prev_norm) || !(m < prev_mod)) monotone = false;
    prev_norm = nx;
    prev_mod = m;
    last_mod = m;
  }
  return {"norm_modular_convergence",
          monotone ? Verdict::pass : Verdict::fail,
          last_mod,
          std::nullopt,
          "|w/n|_X and rho(w/n) decrease together, n = 1..20"};
}

GradientConsistency gradient_consistency(const DiscreteProblem& problem,
                                         double lambda, int samples,
                                         std::uint64_t seed) {
  GradientConsistency gc;
  gc.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.2, 1.0);
  std::bernoulli_distribution sign(0.5);
  const std::size_t n = problem.mesh().size();
  constexpr double h = 1e-5;
  for (int k = 0; k < samples; ++k) {
    std::vector<double> uv(n);
    for (double& x : uv) x = (sign(rng) ? 1.0 : -1.0) * mag(rng);
    const GridFunction u(problem.mesh_ptr(), std::move(uv));
    const GridFunction v(problem.mesh_ptr(), random_values(n, rng));
    const GridFunction g = energy_gradient(u, problem, lambda);
    double gv = 0.0;
    for (std::size_t j = 0; j < n; ++j) gv += g[j] * v[j];
    const double fd = (energy(u + v * h, problem, lambda) -
                       energy(u - v * h, problem, lambda)) /
                      (2.0 * h);
    gc.worst_rel =
        std::max(gc.worst_rel, std::abs(fd - gv) / std::max(std::abs(gv), 1e-300));
  }
  gc.passed = gc.worst_rel <= 1e-5;
  return gc;
}

CheckEntry form_monotonicity(const DiscreteProblem& problem, int pairs,
                             std::uint64_t seed) {
  double worst = INFINITY;
  for (int k = 0; k < pairs; ++k) {
    const GridFunction u = random_grid_function(problem, seed + 2 * k);
    const GridFunction v = random_grid_function(problem, seed + 2 * k + 1);
    const GridFunction d = u - v;
    worst = std::min(worst, bilinear_form(u, d, problem) -
                                bilinear_form(v, d, problem));
  }
  return {"form_monotonicity", worst >= -1e-10 ? Verdict::pass : Verdict::fail,
          worst, std::nullopt, "min of A(u, u-v) - A(v, u-v)"};
}

}  // namespace fracrobin
