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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fracrobin/discrete_problem.hpp"
#include "fracrobin/fields.hpp"
#include "fracrobin/mesh.hpp"
#include "fracrobin/quadrature.hpp"

namespace fracrobin {

enum class ModularKind { lebesgue, gagliardo, x_modular };

struct ModularValue {
  double value = 0.0;
  RegionSel region = RegionSel::all;
  ModularKind kind = ModularKind::lebesgue;
};

struct NormBreakdown {
  double seminorm = 0.0;
  double interior_lebesgue = 0.0;
  double g_weighted = 0.0;
  double beta_weighted = 0.0;
  double total = 0.0;
};

// sum_k weights[k] * |u[nodes[k]] / tau|^{exponents[k]}
struct NodalModular {
  std::vector<std::uint32_t> nodes;
  std::vector<double> weights;
  std::vector<double> exponents;

  double operator()(std::span<const double> u, double tau = 1.0) const;
  bool empty() const { return nodes.empty(); }
};

// Cell-centered quadrature of weight * |u|^p over `region`; the weight
// defaults to one. Zero weights are dropped.
NodalModular nodal_modular(const Mesh& mesh, const ScalarField& p,
                           const ScalarField* weight, RegionSel region);
NodalModular nodal_modular(const Mesh& mesh, std::span<const double> p,
                           std::span<const double> weight, RegionSel region);

// One Luxemburg engine for every modular. `scaled(tau)` must return the
// modular of u / tau. Brackets by doubling or halving from tau = 1, then
// shrinks the bracket (TOMS 748) to 1e-10 relative. Returns tau = 0 when scaled(1) == 0.
struct LuxemburgResult {
  double tau = 0.0;
  double modular = 0.0;  // scaled(tau)
  int iterations = 0;
};
LuxemburgResult luxemburg_solve(const std::function<double(double)>& scaled);

// Luxemburg norm of a nodal modular at u.
double nodal_luxemburg(const NodalModular& modular, std::span<const double> u);

struct ModularDescriptor {
  ModularKind kind = ModularKind::lebesgue;
  ScalarField exponent{};
  std::optional<ScalarField> weight{};
  RegionSel region = RegionSel::interior;
  const PairKernel* kernel = nullptr;
  bool inv_p_weight = false;
  const DiscreteProblem* problem = nullptr;

  static ModularDescriptor lebesgue(ScalarField p,
                                    std::optional<ScalarField> weight = {},
                                    RegionSel region = RegionSel::interior);
  static ModularDescriptor gagliardo(const PairKernel& kernel,
                                     bool inv_p_weight = false);
  static ModularDescriptor x(const DiscreteProblem& problem);
};

ModularValue evaluate_modular(const GridFunction& u,
                              const ModularDescriptor& desc);
double luxemburg_norm(const GridFunction& u, const ModularDescriptor& desc);

double lebesgue_modular(const GridFunction& u, const ScalarField& p,
                        const ScalarField* weight = nullptr,
                        RegionSel region = RegionSel::interior);
double lebesgue_norm(const GridFunction& u, const ScalarField& p,
                     const ScalarField* weight = nullptr,
                     RegionSel region = RegionSel::interior);

// Full ordered double integral over the truncated R^2N \ (C Omega)^2, so
// every unordered pair counts twice. With `inv_p_weight` each pair is
// divided by its exponent.
double gagliardo_modular(const GridFunction& u, const PairKernel& kernel,
                         bool inv_p_weight = false, double tau = 1.0);
double gagliardo_modular(const GridFunction& u, const ExponentField2& p,
                         double s, bool inv_p_weight,
                         const QuadratureOptions& opts);
double gagliardo_seminorm(const GridFunction& u, const PairKernel& kernel);

NormBreakdown x_norm(const GridFunction& u, const DiscreteProblem& problem);
double x_modular(const GridFunction& u, const DiscreteProblem& problem,
                 double tau = 1.0);
double equivalent_norm(const GridFunction& u, const DiscreteProblem& problem);

// Nodal modulars of the three single-node parts of the X-norm.
enum class XPart { interior, g_weighted, beta_weighted };
NodalModular x_part_modular(const DiscreteProblem& problem, XPart part);

// Gradients of Luxemburg norms with respect to the nodal values.
std::vector<double> nodal_norm_gradient(std::span<const double> u,
                                        const NodalModular& modular,
                                        std::size_t size);
std::vector<double> x_norm_gradient(const GridFunction& u,
                                    const DiscreteProblem& problem);

struct HolderPairing {
  double lhs = 0.0;
  double rhs_bound = 0.0;
  double p_minus = 0.0;
  double q_minus = 0.0;
  double norm_u = 0.0;
  double norm_v = 0.0;
};

// |int uv| against (1/p- + 1/q-) |u|_p |v|_q', q the pointwise conjugate.
HolderPairing holder_pairing(const GridFunction& u, const GridFunction& v,
                             const ScalarField& p,
                             RegionSel region = RegionSel::interior);

}  // namespace fracrobin
