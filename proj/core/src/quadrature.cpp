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

#include "fracrobin/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracrobin/errors.hpp"

namespace fracrobin {

namespace {

std::vector<GaussRule> make_rules() {
  std::vector<GaussRule> r(7);
  r[1] = {{0.0}, {2.0}};
  r[2] = {{-0.5773502691896257645, 0.5773502691896257645}, {1.0, 1.0}};
  r[3] = {{-0.7745966692414833770, 0.0, 0.7745966692414833770},
          {0.5555555555555555556, 0.8888888888888888889,
           0.5555555555555555556}};
  r[4] = {{-0.8611363115940525752, -0.3399810435848562648,
           0.3399810435848562648, 0.8611363115940525752},
          {0.3478548451374538574, 0.6521451548625461426, 0.6521451548625461426,
           0.3478548451374538574}};
  r[5] = {{-0.9061798459386639928, -0.5384693101056830910, 0.0,
           0.5384693101056830910, 0.9061798459386639928},
          {0.2369268850561890875, 0.4786286704993664680, 0.5688888888888888889,
           0.4786286704993664680, 0.2369268850561890875}};
  r[6] = {{-0.9324695142031520278, -0.6612093864662645137,
           -0.2386191860831969086, 0.2386191860831969086,
           0.6612093864662645137, 0.9324695142031520278},
          {0.1713244923791703450, 0.3607615730481386076, 0.4679139345726910473,
           0.4679139345726910473, 0.3607615730481386076,
           0.1713244923791703450}};
  return r;
}

struct BoxPoint {
  Point x;
  double w;
};

// Tensor Gauss points on a box.
void box_points(const Box& box, int n, std::vector<BoxPoint>& out) {
  out.clear();
  const GaussRule& g = gauss_legendre(n);
  if (box.dim == 1) {
    const double half = 0.5 * box.width(0);
    const double mid = 0.5 * (box.lower[0] + box.upper[0]);
    for (int k = 0; k < n; ++k) {
      out.push_back({{mid + half * g.nodes[k], 0.0}, half * g.weights[k]});
    }
    return;
  }
  const double hx = 0.5 * box.width(0), hy = 0.5 * box.width(1);
  const double mx = 0.5 * (box.lower[0] + box.upper[0]);
  const double my = 0.5 * (box.lower[1] + box.upper[1]);
  for (int ky = 0; ky < n; ++ky) {
    for (int kx = 0; kx < n; ++kx) {
      out.push_back({{mx + hx * g.nodes[kx], my + hy * g.nodes[ky]},
                     hx * hy * g.weights[kx] * g.weights[ky]});
    }
  }
}

void tensor_rule(const Box& a, const Box& b, int na, int nb,
                 std::vector<PairNode>& out) {
  std::vector<BoxPoint> pa, pb;
  box_points(a, na, pa);
  box_points(b, nb, pb);
  for (const auto& xa : pa) {
    for (const auto& yb : pb) out.push_back({xa.x, yb.x, xa.w * yb.w});
  }
}

std::vector<Box> children(const Box& box) {
  std::vector<Box> out;
  const Point c = box.center();
  if (box.dim == 1) {
    Box l = box, r = box;
    l.upper[0] = c[0];
    r.lower[0] = c[0];
    return {l, r};
  }
  for (int qy = 0; qy < 2; ++qy) {
    for (int qx = 0; qx < 2; ++qx) {
      Box b = box;
      b.lower[0] = qx == 0 ? box.lower[0] : c[0];
      b.upper[0] = qx == 0 ? c[0] : box.upper[0];
      b.lower[1] = qy == 0 ? box.lower[1] : c[1];
      b.upper[1] = qy == 0 ? c[1] : box.upper[1];
      out.push_back(b);
    }
  }
  return out;
}

bool closures_touch(const Box& a, const Box& b) {
  for (int k = 0; k < a.dim; ++k) {
    const double tol = 1e-9 * std::max(a.width(k), b.width(k));
    if (a.lower[k] > b.upper[k] + tol || b.lower[k] > a.upper[k] + tol) {
      return false;
    }
  }
  return true;
}

void touching_rule(const Box& a, const Box& b, int levels, int n,
                   std::vector<PairNode>& out) {
  if (levels <= 0) {
    tensor_rule(a, b, n, n, out);
    return;
  }
  const auto ca = children(a);
  const auto cb = children(b);
  for (const auto& x : ca) {
    for (const auto& y : cb) {
      if (closures_touch(x, y)) {
        touching_rule(x, y, levels - 1, n, out);
      } else {
        tensor_rule(x, y, n, n, out);
      }
    }
  }
}

void self_rule(const Box& a, int levels, int n, std::vector<PairNode>& out) {
  if (levels <= 0) {
    // Distinct node sets for x and y keep every node off the diagonal.
    tensor_rule(a, a, n, std::max(1, n - 1), out);
    return;
  }
  const auto ca = children(a);
  for (std::size_t u = 0; u < ca.size(); ++u) {
    for (std::size_t v = 0; v < ca.size(); ++v) {
      if (u == v) {
        self_rule(ca[u], levels - 1, n, out);
      } else {
        touching_rule(ca[u], ca[v], levels - 1, n, out);
      }
    }
  }
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  static const std::vector<GaussRule> rules = make_rules();
  if (n < 1 || n > 6) {
    throw InvalidArgument("Gauss-Legendre order must be in [1, 6]");
  }
  return rules[n];
}

PairRelation classify_pair(const Cell& a, const Cell& b,
                           const QuadratureOptions& opts) {
  const int d = std::max(std::abs(a.index[0] - b.index[0]),
                         std::abs(a.index[1] - b.index[1]));
  if (d == 0) return PairRelation::self;
  if (d == 1) return PairRelation::touching;
  if (d <= opts.near_distance) return PairRelation::near;
  return PairRelation::far;
}

void pair_rule(const Cell& a, const Cell& b, const QuadratureOptions& opts,
               std::vector<PairNode>& out) {
  out.clear();
  switch (classify_pair(a, b, opts)) {
    case PairRelation::self:
      self_rule(a.box, opts.grading_levels, opts.gauss_points, out);
      break;
    case PairRelation::touching:
      touching_rule(a.box, b.box, opts.grading_levels, opts.gauss_points, out);
      break;
    case PairRelation::near:
      tensor_rule(a.box, b.box, opts.gauss_points, opts.gauss_points, out);
      break;
    case PairRelation::far:
      out.push_back({a.center, b.center, a.measure * b.measure});
      break;
  }
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol, int max_depth) {
  if (!(b > a)) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      f, a, b, static_cast<unsigned>(max_depth), tol, &err);
}

namespace {

// int_0^h1 int_0^h2 (x + y)^{-e} dy dx for 1 < e < 2.
double adjacent_intervals(double h1, double h2, double e) {
  const double k = 2.0 - e;
  return (std::pow(h1, k) + std::pow(h2, k) - std::pow(h1 + h2, k)) /
         ((e - 1.0) * k);
}

}  // namespace

double kernel_weight(const Cell& a, const Cell& b, const ExponentField2& p,
                     double s, int dim, const QuadratureOptions& opts) {
  thread_local std::vector<PairNode> nodes;
  pair_rule(a, b, opts, nodes);
  // Adjacent 1D cells: integrate the kernel with p frozen at the shared end
  // point in closed form, and leave only the difference to the rule.
  if (dim == 1 && classify_pair(a, b, opts) == PairRelation::touching) {
    const double z = a.center[0] < b.center[0] ? a.box.upper[0] : b.box.upper[0];
    const double e0 = 1.0 + s * p({z, 0.0}, {z, 0.0});
    double w = adjacent_intervals(a.measure, b.measure, e0);
    for (const auto& n : nodes) {
      const double r = distance(n.x, n.y);
      const double e = 1.0 + s * p(n.x, n.y);
      if (e != e0) w += n.w * (std::pow(r, -e) - std::pow(r, -e0));
    }
    return w;
  }
  double w = 0.0;
  for (const auto& n : nodes) {
    const double r = distance(n.x, n.y);
    w += n.w * std::pow(r, -(dim + s * p(n.x, n.y)));
  }
  return w;
}

PairKernel build_pair_kernel(const Mesh& mesh, const ExponentField2& p,
                             double s, const QuadratureOptions& opts) {
  PairKernel k;
  k.dim = mesh.dim();
  k.s = s;
  k.entries.reserve(mesh.pair_count());
  const auto& cells = mesh.cells();
  for_each_pair_fast(mesh, [&](const CellPair& cp) {
    if (cp.self) return;
    const Cell& a = cells[cp.i];
    const Cell& b = cells[cp.j];
    k.entries.push_back({cp.i, cp.j, kernel_weight(a, b, p, s, k.dim, opts),
                         p(a.center, b.center)});
  });
  return k;
}

}  // namespace fracrobin
