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

#include <gtest/gtest.h>

#include "fracrobin/config.hpp"
#include "fracrobin/discrete_problem.hpp"
#include "fracrobin/invariants.hpp"
#include "fracrobin/modular.hpp"
#include "fracrobin/operators.hpp"
#include "fracrobin/solver.hpp"
#include "test_support.hpp"

namespace fracrobin {
namespace {

using testing::random_values;

TEST(Energy, ZeroAndConstants) {
  const DiscreteProblem pr(preset_1d(), 16);
  EXPECT_EQ(energy(pr.zeros(), pr, 0.3), 0.0);
  // u = c everywhere, beta = 0: the seminorm vanishes.
  const double c = 1.7, lambda = 0.2;
  EXPECT_NEAR(energy(pr.constant(c), pr, lambda),
              c * c / 2.0 - lambda * std::pow(c, 1.5) / 1.5, 1e-12);
}

TEST(Energy, LambdaZeroAgainstTheModular) {
  // The energy counts each unordered pair once; the modular integrates over
  // ordered pairs, so half of its pair part is removed.
  ProblemSpec spec = preset_1d();
  spec.p = ExponentField2::sinusoidal(2.0, 0.2, 1.0, 0.0, Trig::cos);
  spec.beta = ScalarField::constant(0.6);
  const DiscreteProblem pr(spec, 16);
  std::mt19937_64 rng(37);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  const double expected =
      x_modular(u, pr) - 0.5 * gagliardo_modular(u, pr.kernel(), true);
  EXPECT_NEAR(energy(u, pr, 0.0), expected, 1e-12 * std::abs(expected));
}

TEST(EnergyGradient, ZeroAtOriginAndFiniteDifferences) {
  const DiscreteProblem pr(preset_1d(), 32);
  const GridFunction at_zero = energy_gradient(pr.zeros(), pr, 0.5);
  for (double g : at_zero.values()) EXPECT_EQ(g, 0.0);
  const auto gc = gradient_consistency(pr, 0.05, 20, 41);
  EXPECT_EQ(gc.samples, 20);
  EXPECT_LE(gc.worst_rel, 1e-5);
  EXPECT_TRUE(gc.passed);
}

TEST(EnergyGradient, SourcePairingSplitsOff) {
  const DiscreteProblem pr(preset_1d(), 16);
  std::mt19937_64 rng(43);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  const GridFunction v = random_values(pr.mesh_ptr(), rng);
  const double lambda = 0.3;
  const GridFunction g = energy_gradient(u, pr, lambda);
  double pairing = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) pairing += g[k] * v[k];
  EXPECT_NEAR(pairing,
              bilinear_form(u, v, pr) - source_pairing(u, v, pr, lambda),
              1e-12);
}

TEST(Embedding, LowerBoundsAndRestartMonotonicity) {
  const DiscreteProblem pr(preset_1d(), 32);
  const auto e4 = estimate_embedding_constant(pr, 4, 5);
  const auto e8 = estimate_embedding_constant(pr, 8, 5);
  EXPECT_GE(e4.ratio, e4.ratio_at_one);
  EXPECT_GE(e8.ratio, e4.ratio);
  EXPECT_DOUBLE_EQ(e4.alpha, 2.0 * e4.ratio);
  const auto fine = estimate_embedding_constant(DiscreteProblem(preset_1d(), 64), 4, 5);
  EXPECT_NEAR(fine.ratio, e4.ratio, 0.1 * e4.ratio);
}

TEST(ExistenceRegime, Arithmetic) {
  EXPECT_EQ(lambda_star_formula(1.5, 2.0, 1.0, 1.0), 0.0625);
  EXPECT_DOUBLE_EQ(lambda_star_formula(1.5, 2.0, 1.0, 2.0), 0.03125);
  EXPECT_DOUBLE_EQ(sphere_bound_formula(0.5, 2.0), 1.0 / 48.0);

  const DiscreteProblem pr(preset_1d(), 32);
  const ExistenceRegime r = existence_regime(pr, 1.0, std::nullopt);
  EXPECT_NEAR(r.V_norm, 1.0, 1e-9);
  EXPECT_NEAR(r.lambda_star, 0.0625, 1e-9);
  EXPECT_TRUE(r.lambda_auto);
  EXPECT_DOUBLE_EQ(r.lambda, 0.5 * r.lambda_star);
  EXPECT_FALSE(r.lambda_out_of_range);

  ProblemSpec doubled = preset_1d();
  doubled.V = ScalarField::constant(2.0);
  const ExistenceRegime r2 =
      existence_regime(DiscreteProblem(doubled, 32), 1.0, 0.01);
  EXPECT_NEAR(r2.lambda_star, 0.5 * r.lambda_star, 1e-9);
  EXPECT_FALSE(r2.lambda_auto);
  EXPECT_TRUE(existence_regime(pr, 1.0, 0.07).lambda_out_of_range);
}

TEST(MountainGeometry, PresetHasBothSides) {
  const DiscreteProblem pr(preset_1d(), 32);
  const ExistenceRegime reg = existence_regime(pr, 2.0, std::nullopt);
  const MountainReport m = mountain_geometry_check(pr, reg, 16, 3);
  EXPECT_TRUE(m.sphere_positive);
  EXPECT_GT(m.sphere_min, 0.0);
  EXPECT_LE(m.sphere_norm_dev, 1e-6);
  for (const SpherePoint& s : m.sphere) {
    EXPECT_NEAR(s.norm, reg.rho_ball, 1e-6 * reg.rho_ball);
  }
  EXPECT_TRUE(m.ray_negative);
  EXPECT_LT(m.ray.back().energy, 0.0);
}

TEST(MountainGeometry, LambdaZeroHasNoNegativeRay) {
  const DiscreteProblem pr(preset_1d(), 32);
  const ExistenceRegime reg = existence_regime(pr, 2.0, 0.0);
  const MountainReport m = mountain_geometry_check(pr, reg, 8, 3);
  EXPECT_FALSE(m.ray_negative);
  for (const RayPoint& p : m.ray) EXPECT_GE(p.energy, 0.0);
}

TEST(Minimize, LambdaZeroReturnsOrigin) {
  const DiscreteProblem pr(preset_1d(), 32);
  const ExistenceRegime reg = existence_regime(pr, 2.0, 0.0);
  const GridFunction start = random_grid_function(pr, 7) * 0.1;
  const SolveResult r = minimize(pr, reg, start, SolveOptions{});
  EXPECT_LE(r.norm.total, 1e-6);
  EXPECT_NEAR(r.energy, 0.0, 1e-12);
  for (std::size_t k = 1; k < r.energy_trace.size(); ++k) {
    EXPECT_LE(r.energy_trace[k], r.energy_trace[k - 1]);
  }
  const BoundaryIdentity bi = boundary_identity_check(pr.zeros(), pr);
  EXPECT_EQ(bi.sup, 0.0);
}

TEST(Minimize, PresetFindsANegativeCriticalPoint) {
  const DiscreteProblem pr(preset_1d(), 32);
  const EmbeddingEstimate emb = estimate_embedding_constant(pr, 4, 1);
  const ExistenceRegime reg = existence_regime(pr, emb.alpha, std::nullopt);
  const MountainReport m = mountain_geometry_check(pr, reg, 8, 1);
  const SolveResult r = minimize(pr, reg, m.phi * m.best_t, SolveOptions{});
  EXPECT_TRUE(r.converged);
  EXPECT_LT(r.energy, 0.0);
  EXPECT_GT(r.norm.total, 0.0);
  EXPECT_LE(r.weak_residual, 1e-6);
  EXPECT_LE(r.boundary_residual, 1e-5);
  EXPECT_TRUE(r.strictly_interior);
  for (std::size_t k = 1; k < r.energy_trace.size(); ++k) {
    EXPECT_LE(r.energy_trace[k], r.energy_trace[k - 1]);
  }
}

TEST(BoundaryIdentity, WithoutBetaItIsTheNormalDerivative) {
  const DiscreteProblem pr(preset_1d(), 16);
  std::mt19937_64 rng(47);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  const BoundaryIdentity bi = boundary_identity_check(u, pr);
  ASSERT_FALSE(bi.nodes.empty());
  for (std::size_t k = 0; k < bi.nodes.size(); ++k) {
    EXPECT_NEAR(bi.values[k], neumann_derivative(u, pr, bi.nodes[k]), 1e-13);
    EXPECT_GE(pr.mesh().interior().distance_to(pr.mesh().cell(bi.nodes[k]).center),
              pr.mesh().min_width());
  }
}

TEST(Coercivity, QuadraticModularAndMonotoneRatios) {
  const DiscreteProblem pr(preset_1d(), 32);
  std::mt19937_64 rng(53);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  // p = 2 everywhere: <rho'(u), u> = 2 rho(u).
  EXPECT_NEAR(modular_derivative_pairing(u, pr), 2.0 * x_modular(u, pr),
              1e-12 * x_modular(u, pr));
  const CoercivityReport c = coercivity_check(pr, {2.0, 4.0, 8.0}, 59);
  EXPECT_TRUE(c.monotone);
  EXPECT_TRUE(c.bound_holds);
  EXPECT_TRUE(c.pairing_dominates);
  ASSERT_EQ(c.ratios.size(), 3u);
  // Linear growth in the scale at p = 2.
  EXPECT_NEAR(c.ratios[1] / c.ratios[0], 2.0, 1e-9);
  EXPECT_NEAR(c.ratios[2] / c.ratios[1], 2.0, 1e-9);
}

TEST(Invariants, SuitesPassOnThePreset) {
  const DiscreteProblem pr(preset_1d(), 32);
  for (const ScalarField& p : lebesgue_presets()) {
    const LebesgueSuite s = lebesgue_suite(pr.mesh(), p, 200, 61);
    EXPECT_TRUE(s.passed);
    EXPECT_LE(s.unit_dev, 1e-8);
  }
  const XModularSuite x = x_modular_suite(pr, 100, 67);
  EXPECT_EQ(x.hard_failures, 0);
  EXPECT_LE(x.unit_dev, 1e-8);
  const NormAxioms ax = norm_axioms(pr, 50, 71);
  EXPECT_TRUE(ax.passed);
  EXPECT_NE(form_monotonicity(pr, 100, 73).verdict, Verdict::fail);
  EXPECT_EQ(norm_modular_convergence(pr, 79).verdict, Verdict::pass);
}

}  // namespace
}  // namespace fracrobin
