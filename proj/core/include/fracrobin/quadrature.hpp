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
#include <vector>

#include "fracrobin/fields.hpp"
#include "fracrobin/mesh.hpp"
#include "fracrobin/problem.hpp"

namespace fracrobin {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with 1 <= n <= 6 points.
const GaussRule& gauss_legendre(int n);

enum class PairRelation { self, touching, near, far };

PairRelation classify_pair(const Cell& a, const Cell& b,
                           const QuadratureOptions& opts);

struct PairNode {
  Point x;
  Point y;
  double w;
};

// Quadrature nodes covering a.box x b.box. Self pairs are only meaningful for
// integrands that stay bounded on the diagonal after cancellation; nodes
// never land on x == y.
void pair_rule(const Cell& a, const Cell& b, const QuadratureOptions& opts,
               std::vector<PairNode>& out);

// Adaptive Gauss-Kronrod on [a, b] with relative tolerance `tol`.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol = 1e-11, int max_depth = 18);

// The discrete pair kernel of a piecewise-constant function: for every
// unordered off-diagonal pair (i < j) that is not collar x collar,
//   weight   = integral over cell_i x cell_j of |x - y|^{-N - s p(x, y)}
//   exponent = p(center_i, center_j)
// The exponent of |u_i - u_j| is frozen per pair; the kernel decay uses the
// exact p at every quadrature node.
struct PairEntry {
  std::uint32_t i;
  std::uint32_t j;
  double weight;
  double exponent;
};

struct PairKernel {
  int dim = 1;
  double s = 0.0;
  std::vector<PairEntry> entries;
};

double kernel_weight(const Cell& a, const Cell& b, const ExponentField2& p,
                     double s, int dim, const QuadratureOptions& opts);

PairKernel build_pair_kernel(const Mesh& mesh, const ExponentField2& p,
                             double s, const QuadratureOptions& opts);

}  // namespace fracrobin
