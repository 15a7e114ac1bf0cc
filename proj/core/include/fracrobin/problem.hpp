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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fracrobin/fields.hpp"
#include "fracrobin/geometry.hpp"

namespace fracrobin {

// Omega as an axis-aligned box plus the collar of radius R standing in for
// the exterior R^N \ Omega.
struct Domain {
  int dim = 1;
  Box interior{};
  double collar_radius = 1.0;

  Box outer() const { return interior.enlarged(collar_radius); }
};

// Pair-integral quadrature. Pairs at index distance 1 (touching) get graded
// bisection toward the shared boundary; pairs within `near_distance` get a
// tensor Gauss rule; everything farther uses the midpoint rule.
struct QuadratureOptions {
  int gauss_points = 4;
  int grading_levels = 3;
  int near_distance = 2;

  static QuadratureOptions defaults_for(int dim) {
    if (dim == 1) return {4, 3, 2};
    return {2, 2, 2};
  }
};

struct SolverOptions {
  double tol_grad = 1e-8;
  int max_iters = 5000;
  double armijo = 1e-4;
  double alpha_safety = 2.0;
  int embedding_restarts = 4;
  int embedding_ascent_steps = 40;
  double rho_fraction = 0.9;  // rho = rho_fraction * min(1, 1 / alpha)
  int sphere_samples = 32;
  int weak_test_directions = 50;
};

// Settings of the `check` stage. Empty resolution lists fall back to
// defaults per dimension.
struct CheckOptions {
  std::vector<int> resolutions;  // refinement sequence for the identities
  int resolution = 0;            // modular and form checks; 0 = min(32, N)
  std::vector<double> coercivity_scales{2.0, 4.0, 8.0};
  int monotonicity_samples = 100000;
  int modular_samples = 100;
  int gradient_samples = 20;
};

struct ProblemSpec {
  int dim = 1;
  double s = 0.4;
  Domain domain{};
  int resolution = 64;

  ExponentField2 p = ExponentField2::constant(2.0);
  ScalarField q = ScalarField::constant(1.5);
  ScalarField r = ScalarField::constant(4.0);
  ScalarField V = ScalarField::constant(1.0);
  ScalarField beta = ScalarField::constant(0.0);
  ScalarField g = ScalarField::constant(0.0);

  Box omega0{};
  std::optional<double> lambda;  // empty means "auto" (half of lambda*)

  SolverOptions solver{};
  CheckOptions checks{};
  QuadratureOptions quadrature = QuadratureOptions::defaults_for(1);
  std::size_t pair_budget = 50'000'000;
  std::uint64_t seed = 1;
  bool deterministic = true;
};

// The shipped 1D existence preset: Omega = (0, 1), R = 1, s = 0.4, p = 2,
// q = 1.5, r = 4, V = 1, beta = g = 0, Omega_0 = (0.25, 0.75), lambda auto.
ProblemSpec preset_1d();

}  // namespace fracrobin
