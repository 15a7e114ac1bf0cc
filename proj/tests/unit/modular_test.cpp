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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fracrobin/config.hpp"
#include "fracrobin/discrete_problem.hpp"
#include "fracrobin/errors.hpp"
#include "fracrobin/modular.hpp"
#include "test_support.hpp"

namespace fracrobin {
namespace {

using testing::bisect;
using testing::random_values;
using testing::rel_diff;
using testing::unit_mesh;

GridFunction constant_on(std::shared_ptr<const Mesh> mesh, double c) {
  return GridFunction(std::move(mesh), c);
}

TEST(LebesgueModular, ClosedForms) {
  const auto mesh = unit_mesh(4096);
  const auto two = ScalarField::constant(2.0);
  EXPECT_NEAR(lebesgue_modular(constant_on(mesh, 1.0), two), 1.0, 1e-14);
  EXPECT_EQ(lebesgue_modular(constant_on(mesh, 0.0), two), 0.0);
  // int_0^1 2^{2+x} dx = 4 / ln 2
  const auto p = ScalarField::affine(2.0, {1.0, 0.0});
  EXPECT_NEAR(lebesgue_modular(constant_on(mesh, 2.0), p),
              4.0 / std::numbers::ln2, 1e-6);
}

TEST(LebesgueNorm, ConstantExponentIsTheL2Norm) {
  const auto mesh = unit_mesh(64);
  const auto two = ScalarField::constant(2.0);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 100; ++k) {
    const GridFunction u = random_values(mesh, rng, -3.0, 3.0);
    double sq = 0.0;
    for (auto i : mesh->interior_ids()) sq += mesh->cell(i).measure * u[i] * u[i];
    EXPECT_NEAR(lebesgue_norm(u, two), std::sqrt(sq), 1e-8 * std::sqrt(sq));
  }
  const auto fine = unit_mesh(4096);
  const GridFunction x = interpolate([](const Point& p) { return p[0]; }, fine);
  EXPECT_NEAR(lebesgue_norm(x, two), 1.0 / std::sqrt(3.0), 1e-7);
}

TEST(LebesgueNorm, UnitFunctionOnUnitMeasure) {
  const auto mesh = unit_mesh(64);
  const GridFunction one = constant_on(mesh, 1.0);
  for (const ScalarField& p :
       {ScalarField::constant(1.3), ScalarField::affine(2.0, {1.0, 0.0}),
        ScalarField::sinusoidal(2.5, 0.7, 4.0)}) {
    EXPECT_NEAR(lebesgue_norm(one, p), 1.0, 1e-9);
  }
}

TEST(LebesgueNorm, VariableExponentAgainstBisectionOracle) {
  // For u = 2, p = 2 + x: int (2/tau)^{2+x} = a^2 (a - 1) / ln a, a = 2 / tau.
  const double oracle = bisect(
      [](double tau) {
        const double a = 2.0 / tau;
        return a * a * (a - 1.0) / std::log(a) - 1.0;
      },
      2.0, 4.0);
  const auto mesh = unit_mesh(4096);
  const auto p = ScalarField::affine(2.0, {1.0, 0.0});
  EXPECT_NEAR(lebesgue_norm(constant_on(mesh, 2.0), p), oracle, 1e-7 * oracle);

  // High-precision reference values of the same modular equation.
  const GridFunction lin =
      interpolate([](const Point& x) { return 1.0 + x[0]; }, mesh);
  EXPECT_NEAR(lebesgue_norm(lin, p), 1.57203066758950416512921258717, 1e-7);
  const GridFunction wave = interpolate(
      [](const Point& x) { return std::sin(3.0 * x[0]) + 1.5; }, mesh);
  EXPECT_NEAR(lebesgue_norm(wave, p), 2.19568204567854467876392781294, 1e-7);
}

TEST(LuxemburgSolve, ContractOnBothBranches) {
  for (double scale : {1e-6, 0.3, 1.0, 7.0, 1e5}) {
    const auto scaled = [scale](double tau) {
      const double a = scale / tau;
      return 0.3 * a * a + 0.7 * std::pow(a, 3.5);
    };
    const LuxemburgResult r = luxemburg_solve(scaled);
    EXPECT_NEAR(scaled(r.tau), 1.0, 1e-8) << scale;
    EXPECT_NEAR(r.modular, 1.0, 1e-8);
  }
  EXPECT_EQ(luxemburg_solve([](double) { return 0.0; }).tau, 0.0);
  EXPECT_THROW(luxemburg_solve([](double) { return INFINITY; }), BracketFailure);
}

TEST(GagliardoModular, ConstantFunctionsVanish) {
  const DiscreteProblem pr(preset_1d(), 16);
  EXPECT_EQ(gagliardo_modular(pr.constant(3.0), pr.kernel()), 0.0);
  EXPECT_EQ(gagliardo_seminorm(pr.constant(-1.0), pr.kernel()), 0.0);
}

TEST(GagliardoModular, MatchesOrderedDoubleLoop) {
  ProblemSpec spec = preset_1d();
  spec.s = 0.25;
  const DiscreteProblem pr(spec, 12);
  const Mesh& mesh = pr.mesh();
  const GridFunction u = interpolate(
      [](const Point& x) { return x[0] > 0.0 && x[0] < 0.5 ? 1.0 : -0.5; },
      pr.mesh_ptr());
  double oracle = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    for (std::size_t j = 0; j < mesh.size(); ++j) {
      const Cell& a = mesh.cell(i);
      const Cell& b = mesh.cell(j);
      if (i == j) continue;
      if (a.region == Region::collar && b.region == Region::collar) continue;
      const double d = u[i] - u[j];
      oracle += d * d * kernel_weight(a, b, spec.p, spec.s, 1, spec.quadrature);
    }
  }
  EXPECT_GT(oracle, 0.0);
  EXPECT_NEAR(gagliardo_modular(u, pr.kernel()), oracle, 1e-12 * oracle);
}

TEST(GagliardoModular, QuadraticHomogeneity) {
  const DiscreteProblem pr(preset_1d(), 16);
  std::mt19937_64 rng(3);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  EXPECT_NEAR(gagliardo_modular(u * 2.0, pr.kernel()),
              4.0 * gagliardo_modular(u, pr.kernel()),
              1e-12 * gagliardo_modular(u * 2.0, pr.kernel()));
}

TEST(XNorm, Parts) {
  ProblemSpec spec = preset_1d();
  const DiscreteProblem pr(spec, 16);
  const NormBreakdown zero = x_norm(pr.zeros(), pr);
  EXPECT_EQ(zero.total, 0.0);
  const NormBreakdown one = x_norm(pr.constant(1.0), pr);
  EXPECT_EQ(one.seminorm, 0.0);
  EXPECT_NEAR(one.interior_lebesgue, 1.0, 1e-9);
  EXPECT_NEAR(one.total, 1.0, 1e-9);

  std::mt19937_64 rng(5);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  const NormBreakdown b = x_norm(u, pr);
  EXPECT_EQ(b.g_weighted, 0.0);
  EXPECT_EQ(b.beta_weighted, 0.0);
  EXPECT_DOUBLE_EQ(b.total, b.seminorm + b.interior_lebesgue);
}

TEST(XModular, ClosedFormAndIndependentParts) {
  ProblemSpec spec = preset_1d();
  {
    const DiscreteProblem base(spec, 16);
    EXPECT_NEAR(x_modular(base.constant(1.0), base), 0.5, 1e-12);
    EXPECT_EQ(x_modular(base.zeros(), base), 0.0);
  }

  spec.p = ExponentField2::sinusoidal(2.0, 0.2, 1.0, 0.0, Trig::cos);
  spec.beta = ScalarField::constant(0.7);
  spec.g = ScalarField::affine(0.1, {0.05, 0.0});
  const DiscreteProblem pr(spec, 16);
  std::mt19937_64 rng(9);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  double pairs = 0.0;
  for (const PairEntry& e : pr.kernel().entries) {
    pairs += 2.0 * e.weight * std::pow(std::abs(u[e.i] - u[e.j]), e.exponent) /
             e.exponent;
  }
  double nodes = 0.0;
  const Mesh& mesh = pr.mesh();
  for (std::size_t k = 0; k < mesh.size(); ++k) {
    const Cell& c = mesh.cell(k);
    const double pk = pbar(spec.p, c.center);
    const double w = c.region == Region::interior
                         ? 1.0
                         : std::abs(spec.g(c.center)) + spec.beta(c.center);
    nodes += c.measure * w * std::pow(std::abs(u[k]), pk) / pk;
  }
  EXPECT_NEAR(x_modular(u, pr), pairs + nodes, 1e-12 * (pairs + nodes));
}

TEST(EquivalentNorm, UnitLevelAndHomogeneity) {
  ProblemSpec spec = preset_1d();
  spec.p = ExponentField2::sinusoidal(2.0, 0.2, 1.0, 0.0, Trig::cos);
  spec.beta = ScalarField::constant(0.5);
  const DiscreteProblem pr(spec, 16);
  EXPECT_EQ(equivalent_norm(pr.zeros(), pr), 0.0);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> cdist(-20.0, 20.0);
  for (int k = 0; k < 10; ++k) {
    const GridFunction u = random_values(pr.mesh_ptr(), rng);
    const double mu = equivalent_norm(u, pr);
    EXPECT_NEAR(x_modular(u, pr, mu), 1.0, 1e-8);
    const double c = cdist(rng);
    EXPECT_NEAR(equivalent_norm(u * c, pr), std::abs(c) * mu,
                1e-9 * std::abs(c) * mu);
  }
}

TEST(Descriptors, AgreeWithDirectEvaluation) {
  const DiscreteProblem pr(preset_1d(), 16);
  std::mt19937_64 rng(17);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  const auto p = ScalarField::affine(2.0, {0.5, 0.0});
  const auto leb = ModularDescriptor::lebesgue(p);
  EXPECT_DOUBLE_EQ(evaluate_modular(u, leb).value, lebesgue_modular(u, p));
  EXPECT_DOUBLE_EQ(luxemburg_norm(u, leb), lebesgue_norm(u, p));
  const auto gag = ModularDescriptor::gagliardo(pr.kernel());
  EXPECT_DOUBLE_EQ(evaluate_modular(u, gag).value,
                   gagliardo_modular(u, pr.kernel()));
  const auto x = ModularDescriptor::x(pr);
  EXPECT_DOUBLE_EQ(evaluate_modular(u, x).value, x_modular(u, pr));
  EXPECT_NEAR(luxemburg_norm(u, x), equivalent_norm(u, pr),
              1e-12 * equivalent_norm(u, pr));
}

TEST(NormGradient, MatchesCentralDifferences) {
  const DiscreteProblem pr(preset_1d(), 16);
  std::mt19937_64 rng(19);
  const GridFunction u = random_values(pr.mesh_ptr(), rng);
  const std::vector<double> g = x_norm_gradient(u, pr);
  for (std::uint32_t k : {3u, 17u, 30u}) {
    GridFunction up = u, dn = u;
    const double h = 1e-6;
    up[k] += h;
    dn[k] -= h;
    const double fd = (x_norm(up, pr).total - x_norm(dn, pr).total) / (2 * h);
    EXPECT_NEAR(g[k], fd, 1e-6 * std::max(1.0, std::abs(fd))) << k;
  }
}

TEST(HolderPairing, EqualityAndBound) {
  const auto mesh = unit_mesh(64);
  const auto two = ScalarField::constant(2.0);
  const HolderPairing z = holder_pairing(constant_on(mesh, 1.0),
                                         constant_on(mesh, 0.0), two);
  EXPECT_EQ(z.lhs, 0.0);
  EXPECT_EQ(z.rhs_bound, 0.0);
  const HolderPairing eq = holder_pairing(constant_on(mesh, 1.0),
                                          constant_on(mesh, 1.0), two);
  EXPECT_NEAR(eq.lhs, 1.0, 1e-12);
  EXPECT_NEAR(eq.rhs_bound, 1.0, 1e-9);

  const auto p = ScalarField::affine(2.0, {1.0, 0.0});
  std::mt19937_64 rng(23);
  for (int k = 0; k < 50; ++k) {
    const GridFunction u = random_values(mesh, rng, -4.0, 4.0);
    const GridFunction v = random_values(mesh, rng, -4.0, 4.0);
    const HolderPairing h = holder_pairing(u, v, p);
    EXPECT_LE(h.lhs, h.rhs_bound);
  }
}

}  // namespace
}  // namespace fracrobin
