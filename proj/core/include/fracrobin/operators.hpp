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

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "fracrobin/discrete_problem.hpp"
#include "fracrobin/mesh.hpp"
#include "fracrobin/problem.hpp"

namespace fracrobin {

// |d|^{p-2} d
inline double phi_p(double d, double p) {
  return std::copysign(std::pow(std::abs(d), p - 1.0), d);
}

struct IdentityResidual {
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_residual = 0.0;
  double rel_residual = 0.0;
  std::vector<std::pair<int, double>> refinement_trace;  // (resolution, abs)
  double observed_order = 0.0;  // over the last two refinements
  bool converged = false;

  void set(double l, double r);
};

// Integration data for the strong operators: the kernel exponent, s, and
// the box the y-integral runs over.
struct OperatorSetting {
  ExponentField2 p;
  double s = 0.0;
  int dim = 1;
  Box region{};
  double tol = 1e-10;
};

struct PrincipalValue {
  double value = 0.0;
  bool converged = false;
  std::vector<double> values;  // one per epsilon
};

// Principal value of the strong operator at x: the y-integral over
// `setting.region` minus the ball B_eps(x), one value per epsilon. In 1D
// the rays x + r and x - r are paired, in 2D the directions theta and
// theta + pi, so the odd part of the kernel cancels inside the integrand.
// Converged when the last two values agree to 1e-4 relative.
PrincipalValue frac_p_laplacian(const AnalyticFunction& u,
                                const OperatorSetting& setting,
                                const Point& x,
                                std::span<const double> eps_sequence);
PrincipalValue frac_p_laplacian(const AnalyticFunction& u,
                                const ProblemSpec& spec, const Point& x,
                                std::span<const double> eps_sequence);

// Nonlocal normal derivative at an exterior point x: the y-integral over
// the interior box only. Throws TooCloseToBoundary when x is nearer than
// `clearance` to the interior box.
double neumann_derivative(const AnalyticFunction& u,
                          const OperatorSetting& setting, const Point& x,
                          double clearance);
double neumann_derivative(const AnalyticFunction& u, const ProblemSpec& spec,
                          const Point& x);

// Discrete counterparts on the pair kernel, per node: the strong operator
// (1/m_i) sum_j K_ij phi(u_i - u_j) at interior nodes and the normal
// derivative (1/m_k) sum_{j in Omega} K_kj phi(u_k - u_j) at collar nodes.
std::vector<double> discrete_operator(const GridFunction& u,
                                      const DiscreteProblem& problem);
double neumann_derivative(const GridFunction& u,
                          const DiscreteProblem& problem, std::uint32_t node);

// A(u, v): the halved symmetric pair sum plus the interior and beta terms.
double bilinear_form(const GridFunction& u, const GridFunction& v,
                     const DiscreteProblem& problem);

// Omega and Omega-exterior halves of the divergence identity at one
// resolution, shared by the divergence and Green checks.
struct DivergenceParts {
  double interior = 0.0;  // sum over Omega cells of m * L u
  double exterior = 0.0;  // sum over collar cells of m * N u
};

IdentityResidual divergence_check(const AnalyticFunction& u,
                                  const ProblemSpec& spec,
                                  std::span<const int> resolutions);

IdentityResidual green_check(const AnalyticFunction& u,
                             const AnalyticFunction& v,
                             const ProblemSpec& spec,
                             std::span<const int> resolutions);

struct AntisymmetryResult {
  double sum = 0.0;
  double abs_sum = 0.0;
  bool passed = false;
};

// The ordered Omega x Omega sum of phi(u_i - u_j) K_ij, with the kernel
// recomputed for every ordered pair.
AntisymmetryResult interior_antisymmetry_check(const GridFunction& u,
                                               const ExponentField2& p,
                                               double s,
                                               const QuadratureOptions& opts);

struct MonotonicityResult {
  int samples = 0;
  int monotone_violations = 0;
  double min_monotone = 0.0;  // smallest (phi(a) - phi(b))(a - b)
  int simon_samples = 0;
  int simon_violations = 0;  // |a-b|^p > 2^p (phi(a) - phi(b))(a - b)
  bool passed = false;       // decided by monotonicity alone
};

MonotonicityResult scalar_monotonicity_check(int samples,
                                             std::uint64_t seed = 1);

// Smooth test functions: a C-infinity bump supported in `support`, and a
// generic bounded smooth function on the whole plane.
AnalyticFunction bump_function(const Box& support);
AnalyticFunction smooth_profile(double a, double b, double c);

}  // namespace fracrobin
