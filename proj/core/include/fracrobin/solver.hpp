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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracrobin/discrete_problem.hpp"
#include "fracrobin/mesh.hpp"
#include "fracrobin/modular.hpp"

namespace fracrobin {

// I(u) = sum over unordered pairs K |u_i - u_j|^p / p
//      + int_Omega |u|^pbar / pbar + int_collar beta |u|^pbar / pbar
//      - lambda int_Omega V |u|^q / q
double energy(const GridFunction& u, const DiscreteProblem& problem,
              double lambda);

// Exact gradient of the discrete energy with respect to nodal values, so
// <energy_gradient(u), v> = A(u, v) - lambda int_Omega V phi_q(u) v.
GridFunction energy_gradient(const GridFunction& u,
                             const DiscreteProblem& problem, double lambda);

// lambda int_Omega V |u|^{q-2} u v
double source_pairing(const GridFunction& u, const GridFunction& v,
                      const DiscreteProblem& problem, double lambda);

struct EmbeddingEstimate {
  double ratio = 0.0;          // best |u|_{r'q} / |u|_X found
  double ratio_at_one = 0.0;   // the same ratio at u = 1
  double alpha = 0.0;          // ratio times the safety factor
  std::vector<double> per_restart;
};

// Projected ascent of |u|_{L^{r'q}(Omega)} / |u|_X from random starts;
// restart k draws from seed + k.
EmbeddingEstimate estimate_embedding_constant(const DiscreteProblem& problem,
                                              int restarts,
                                              std::uint64_t seed);

struct ExistenceRegime {
  double alpha = 0.0;
  double lambda_star = 0.0;
  double rho_ball = 0.0;
  double sphere_bound_a = 0.0;
  double lambda = 0.0;
  double q_minus = 0.0;
  double p_plus = 0.0;
  double V_norm = 0.0;
  // rho^{q-} (rho^{p+ - q-} - lambda / (2 lambda*)) / (p+ 3^{p+ - 1}): the
  // lower bound the chain of inequalities actually delivers at this lambda.
  double sphere_bound_chain = 0.0;
  bool lambda_auto = false;
  bool lambda_out_of_range = false;
  bool alpha_heuristic = true;
};

double lambda_star_formula(double q_minus, double p_plus, double alpha,
                           double V_norm);
double sphere_bound_formula(double rho, double p_plus);

ExistenceRegime existence_regime(const DiscreteProblem& problem, double alpha,
                                 std::optional<double> lambda);

struct SpherePoint {
  double scale = 0.0;
  double norm = 0.0;
  double energy = 0.0;
};

struct RayPoint {
  double t = 0.0;
  double energy = 0.0;
  double norm = 0.0;
};

struct MountainReport {
  std::vector<SpherePoint> sphere;
  double sphere_min = 0.0;
  double sphere_norm_dev = 0.0;  // max |norm / rho - 1|
  bool sphere_positive = false;
  bool sphere_above_a = false;
  std::vector<RayPoint> ray;
  std::size_t listed_ray_points = 10;  // t = 2^-1 .. 2^-10
  bool ray_negative = false;           // I(t phi) < 0 at the smallest t
  bool ray_negative_listed = false;    // same, within the listed points
  double best_t = 0.0;
  GridFunction phi;
};

// The ray profile: a smooth bump supported in omega0, equal to one on its
// middle half.
AnalyticFunction plateau_bump(const Box& omega0);

MountainReport mountain_geometry_check(const DiscreteProblem& problem,
                                       const ExistenceRegime& regime,
                                       int sphere_samples, std::uint64_t seed);

struct SolveOptions {
  double tol_grad = 1e-8;
  int max_iters = 5000;
  double armijo = 1e-4;
  int weak_test_directions = 50;
  std::uint64_t seed = 1;
};

struct SolveResult {
  GridFunction u_lambda;
  double energy = 0.0;
  double gradient_norm = 0.0;
  double weak_residual = 0.0;
  double boundary_residual = 0.0;
  int iterations = 0;
  std::vector<double> energy_trace;
  NormBreakdown norm{};
  bool converged = false;
  bool line_search_failed = false;
  bool strictly_interior = false;
  int projections = 0;
};

// Projected gradient descent with Barzilai-Borwein trial steps and Armijo
// backtracking, kept inside the ball |u|_X <= rho by radial rescaling.
SolveResult minimize(const DiscreteProblem& problem,
                     const ExistenceRegime& regime, const GridFunction& start,
                     const SolveOptions& options);

// max over random v of |A(u, v) - lambda int V phi_q(u) v| / (1 + |v|_X)
double weak_residual(const GridFunction& u, const DiscreteProblem& problem,
                     double lambda, int directions, std::uint64_t seed);

struct BoundaryIdentity {
  std::vector<std::uint32_t> nodes;
  std::vector<double> values;  // N u + beta phi(u) - g at each node
  double sup = 0.0;
};

// The Robin identity at collar nodes at least one cell away from Omega.
BoundaryIdentity boundary_identity_check(const GridFunction& u,
                                         const DiscreteProblem& problem);

struct CoercivityReport {
  std::vector<double> scales;
  std::vector<double> ratios;          // <rho'(cu), cu> / |cu|_X
  std::vector<double> x_bounds;        // |cu|_X^{p- - 1}
  std::vector<double> eq_ratios;       // <rho'(cu), cu> / |cu|_rho
  std::vector<double> eq_bounds;       // |cu|_rho^{p- - 1}
  bool monotone = false;
  bool bound_holds = false;            // equivalent-norm form, where |cu|_rho > 1
  bool x_bound_holds = false;          // four-term form, reported only
  bool pairing_dominates = false;      // <rho'(cu), cu> >= rho(cu)
};

// <rho'(u), u>
double modular_derivative_pairing(const GridFunction& u,
                                  const DiscreteProblem& problem);

CoercivityReport coercivity_check(const DiscreteProblem& problem,
                                  const std::vector<double>& scales,
                                  std::uint64_t seed);

// Random nodal values, uniform in [-1, 1].
GridFunction random_grid_function(const DiscreteProblem& problem,
                                  std::uint64_t seed);

}  // namespace fracrobin
