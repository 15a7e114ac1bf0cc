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
#include <vector>

#include "fracrobin/discrete_problem.hpp"
#include "fracrobin/fields.hpp"
#include "fracrobin/validation.hpp"

namespace fracrobin {

// Norm-modular relations of a variable-exponent space on Omega, for random
// functions scaled to both sides of the unit sphere:
//   unit ball   rho(u / |u|) = 1
//   |u| > 1     |u|^{p-} <= rho(u) <= |u|^{p+}
//   |u| < 1     |u|^{p+} <= rho(u) <= |u|^{p-}
struct LebesgueSuite {
  int samples = 0;
  double unit_dev = 0.0;   // max |rho(u / |u|) - 1|
  double worst_above = 0.0;  // worst relative violation, |u| > 1
  double worst_below = 0.0;  // worst relative violation, |u| < 1
  bool passed = false;
};

LebesgueSuite lebesgue_suite(const Mesh& mesh, const ScalarField& p,
                             int samples, std::uint64_t seed);

// The three exponent presets the suite runs through.
std::vector<ScalarField> lebesgue_presets();

// Modular of the X space against its norms. Asserted with the modular's own
// Luxemburg norm mu:
//   (i)   rho(u / mu) = 1 +- 1e-8
//   (ii)  mu < 1:  mu^{p+} / 4^{p+ - 1} <= rho(u) <= 4 mu^{p-}
//   (iii) mu > 1:  mu^{p-} <= rho(u)
// and the same inequalities with the four-term X-norm are reported.
struct XModularSuite {
  int samples = 0;
  double unit_dev = 0.0;
  int hard_failures = 0;       // equivalent-norm form
  int x_violations = 0;        // four-term form
  int x_violations_beyond_2tol = 0;
  double x_worst = 0.0;        // worst relative violation, four-term form
  bool passed = false;
};

XModularSuite x_modular_suite(const DiscreteProblem& problem, int samples,
                              std::uint64_t seed);

// Absolute homogeneity and the triangle inequality of every Luxemburg norm.
struct NormAxioms {
  int pairs = 0;
  double worst_homogeneity = 0.0;
  double worst_triangle = 0.0;  // max (N(u+v) - N(u) - N(v)) / N(u+v)
  bool passed = false;
};

NormAxioms norm_axioms(const DiscreteProblem& problem, int pairs,
                       std::uint64_t seed);

// |w / n| and rho(w / n) decrease to zero together over n = 1..20.
CheckEntry norm_modular_convergence(const DiscreteProblem& problem,
                                    std::uint64_t seed);

struct GradientConsistency {
  int samples = 0;
  double worst_rel = 0.0;
  bool passed = false;
};

// Central differences with step 1e-5 against <energy_gradient, v>.
GradientConsistency gradient_consistency(const DiscreteProblem& problem,
                                         double lambda, int samples,
                                         std::uint64_t seed);

// A(u, u - v) - A(v, u - v) >= -1e-10 on random pairs.
CheckEntry form_monotonicity(const DiscreteProblem& problem, int pairs,
                             std::uint64_t seed);

}  // namespace fracrobin
