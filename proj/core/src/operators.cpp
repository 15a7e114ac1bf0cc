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

#include "fracrobin/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "fracrobin/errors.hpp"
#include "fracrobin/quadrature.hpp"

namespace fracrobin {

void IdentityResidual::set(double l, double r) {
  lhs = l;
  rhs = r;
  abs_residual = std::abs(l - r);
  rel_residual = abs_residual / std::max({1.0, std::abs(l), std::abs(r)});
}

namespace {

// phi(u(x) - u(y)) |x - y|^{-N - s p(x, y)}
inline double kernel_term(const AnalyticFunction& u, double ux,
                          const OperatorSetting& st, const Point& x,
                          const Point& y) {
  const double d = ux - u(y);
  if (d == 0.0) return 0.0;
  const double pxy = st.p(x, y);
  return phi_p(d, pxy) * std::pow(distance(x, y), -(st.dim + st.s * pxy));
}

// Break points in [lo, hi] graded geometrically around `focus`.
std::vector<double> graded_breaks(double lo, double hi, double focus,
                                  double scale) {
  std::vector<double> b{lo, hi};
  if (focus > lo && focus < hi) b.push_back(focus);
  scale = std::max(scale, 1e-6 * (hi - lo));
  for (double t = scale; t < 2.0 * (hi - lo); t *= 2.0) {
    for (double c : {focus - t, focus + t}) {
      if (c > lo && c < hi) b.push_back(c);
    }
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

double integrate_pieces(const std::function<double(double)>& f,
                        const std::vector<double>& breaks, double tol) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    sum += integrate_adaptive(f, breaks[k], breaks[k + 1], tol, 12);
  }
  return sum;
}

// Integral over r in [lo, hi] with pieces doubling from lo.
double integrate_radial(const std::function<double(double)>& f, double lo,
                        double hi, double tol) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> b{lo};
  for (double r = 2.0 * lo; r < hi; r *= 2.0) b.push_back(r);
  b.push_back(hi);
  return integrate_pieces(f, b, tol);
}

double pv_1d(const AnalyticFunction& u, const OperatorSetting& st,
             const Point& x, double eps) {
  const double ux = u(x);
  const double left = x[0] - st.region.lower[0];
  const double right = st.region.upper[0] - x[0];
  const double rmin = std::min(left, right);
  const double rmax = std::max(left, right);
  const double side = right >= left ? 1.0 : -1.0;
  const auto paired = [&](double r) {
    return kernel_term(u, ux, st, x, {x[0] + r, 0.0}) +
           kernel_term(u, ux, st, x, {x[0] - r, 0.0});
  };
  const auto single = [&](double r) {
    return kernel_term(u, ux, st, x, {x[0] + side * r, 0.0});
  };
  return integrate_radial(paired, eps, rmin, st.tol) +
         integrate_radial(single, std::max(eps, rmin), rmax, st.tol);
}

double ray_length(const Box& box, const Point& x, double c, double s) {
  double len = std::numeric_limits<double>::infinity();
  const std::array<double, 2> e{c, s};
  for (int a = 0; a < 2; ++a) {
    if (e[a] > 1e-300) len = std::min(len, (box.upper[a] - x[a]) / e[a]);
    if (e[a] < -1e-300) len = std::min(len, (box.lower[a] - x[a]) / e[a]);
  }
  return std::max(len, 0.0);
}

double pv_2d(const AnalyticFunction& u, const OperatorSetting& st,
             const Point& x, double eps) {
  const double ux = u(x);
  const Box& box = st.region;
  const auto inner = [&](double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double fwd = ray_length(box, x, c, s);
    const double bwd = ray_length(box, x, -c, -s);
    const double rmin = std::min(fwd, bwd);
    const double rmax = std::max(fwd, bwd);
    const double side = fwd >= bwd ? 1.0 : -1.0;
    const auto paired = [&](double r) {
      return r * (kernel_term(u, ux, st, x, {x[0] + r * c, x[1] + r * s}) +
                  kernel_term(u, ux, st, x, {x[0] - r * c, x[1] - r * s}));
    };
    const auto single = [&](double r) {
      const double rr = side * r;
      return r * kernel_term(u, ux, st, x, {x[0] + rr * c, x[1] + rr * s});
    };
    return integrate_radial(paired, eps, rmin, st.tol) +
           integrate_radial(single, std::max(eps, rmin), rmax, st.tol);
  };
  // Ray lengths have kinks where a ray hits a corner.
  std::vector<double> breaks{0.0, std::numbers::pi};
  for (double cx : {box.lower[0], box.upper[0]}) {
    for (double cy : {box.lower[1], box.upper[1]}) {
      double t = std::atan2(cy - x[1], cx - x[0]);
      if (t < 0.0) t += std::numbers::pi;
      if (t > 0.0 && t < std::numbers::pi) breaks.push_back(t);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  return integrate_pieces(inner, breaks, 10.0 * st.tol);
}

double pv_at(const AnalyticFunction& u, const OperatorSetting& st,
             const Point& x, double eps) {
  return st.dim == 1 ? pv_1d(u, st, x, eps) : pv_2d(u, st, x, eps);
}

double neumann_unchecked(const AnalyticFunction& u, const OperatorSetting& st,
                         const Point& x) {
  const double ux = u(x);
  const Box& box = st.region;
  const double d0 = box.distance_to(x);
  if (st.dim == 1) {
    const auto f = [&](double y) { return kernel_term(u, ux, st, x, {y, 0.0}); };
    return integrate_pieces(f, graded_breaks(box.lower[0], box.upper[0], x[0], d0),
                            st.tol);
  }
  const auto outer = [&](double y0) {
    const double dy = std::max(d0, std::abs(y0 - x[0]));
    const auto f = [&](double y1) {
      return kernel_term(u, ux, st, x, {y0, y1});
    };
    return integrate_pieces(
        f, graded_breaks(box.lower[1], box.upper[1], x[1], dy), st.tol);
  };
  return integrate_pieces(
      outer, graded_breaks(box.lower[0], box.upper[0], x[0], d0),
      10.0 * st.tol);
}

OperatorSetting setting_for(const ProblemSpec& spec, const Box& region) {
  return {spec.p, spec.s, spec.dim, region, 1e-8};
}

DivergenceParts divergence_parts(const AnalyticFunction& u,
                                 const ProblemSpec& spec, const Mesh& mesh,
                                 const AnalyticFunction* v) {
  const double eps = 0.25 * mesh.min_width();
  const OperatorSetting strong = setting_for(spec, mesh.outer());
  const OperatorSetting normal = setting_for(spec, mesh.interior());
  DivergenceParts parts;
  for (std::uint32_t k : mesh.interior_ids()) {
    const Cell& c = mesh.cell(k);
    const double w = v ? (*v)(c.center) : 1.0;
    parts.interior += c.measure * w * pv_at(u, strong, c.center, eps);
  }
  for (std::uint32_t k : mesh.collar_ids()) {
    const Cell& c = mesh.cell(k);
    const double w = v ? (*v)(c.center) : 1.0;
    parts.exterior += c.measure * w * neumann_unchecked(u, normal, c.center);
  }
  return parts;
}

void finish_trace(IdentityResidual& res) {
  const auto& t = res.refinement_trace;
  if (t.empty()) return;
  if (res.abs_residual <= 1e-13) {
    res.converged = true;
    return;
  }
  if (t.size() < 2) return;
  bool monotone = true;
  for (std::size_t k = 1; k < t.size(); ++k) {
    if (!(t[k].second < t[k - 1].second)) monotone = false;
  }
  const auto& a = t[t.size() - 2];
  const auto& b = t.back();
  res.observed_order = std::log(a.second / b.second) /
                       std::log(static_cast<double>(b.first) / a.first);
  res.converged = monotone && res.observed_order >= 0.5;
}

}  // namespace

PrincipalValue frac_p_laplacian(const AnalyticFunction& u,
                                const OperatorSetting& setting,
                                const Point& x,
                                std::span<const double> eps_sequence) {
  if (!setting.region.strictly_contains(x)) {
    throw InvalidArgument("frac_p_laplacian: x must lie inside the region");
  }
  PrincipalValue pv;
  for (double eps : eps_sequence) {
    pv.values.push_back(pv_at(u, setting, x, eps));
  }
  if (!pv.values.empty()) pv.value = pv.values.back();
  if (pv.values.size() >= 2) {
    const double a = pv.values[pv.values.size() - 2];
    const double b = pv.values.back();
    const double scale = std::max(std::abs(a), std::abs(b));
    pv.converged = scale < 1e-300 || std::abs(a - b) <= 1e-4 * scale;
  }
  return pv;
}

PrincipalValue frac_p_laplacian(const AnalyticFunction& u,
                                const ProblemSpec& spec, const Point& x,
                                std::span<const double> eps_sequence) {
  return frac_p_laplacian(u, setting_for(spec, spec.domain.outer()), x,
                          eps_sequence);
}

double neumann_derivative(const AnalyticFunction& u,
                          const OperatorSetting& setting, const Point& x,
                          double clearance) {
  if (setting.region.distance_to(x) < clearance) {
    throw TooCloseToBoundary(
        "neumann_derivative: point closer than one cell to the boundary");
  }
  return neumann_unchecked(u, setting, x);
}

double neumann_derivative(const AnalyticFunction& u, const ProblemSpec& spec,
                          const Point& x) {
  const double h = spec.domain.interior.width(0) / spec.resolution;
  return neumann_derivative(u, setting_for(spec, spec.domain.interior), x,
                            h * (1.0 - 1e-9));
}

std::vector<double> discrete_operator(const GridFunction& u,
                                      const DiscreteProblem& problem) {
  const auto v = u.values();
  std::vector<double> acc(v.size(), 0.0);
  for (const PairEntry& e : problem.kernel().entries) {
    const double f = e.weight * phi_p(v[e.i] - v[e.j], e.exponent);
    acc[e.i] += f;
    acc[e.j] -= f;
  }
  const auto m = problem.measure();
  for (std::size_t k = 0; k < acc.size(); ++k) acc[k] /= m[k];
  return acc;
}

double neumann_derivative(const GridFunction& u,
                          const DiscreteProblem& problem, std::uint32_t node) {
  const Mesh& mesh = problem.mesh();
  const Cell& c = mesh.cell(node);
  if (c.region != Region::collar) {
    throw InvalidArgument("neumann_derivative: node is not in the collar");
  }
  if (mesh.interior().distance_to(c.center) < mesh.min_width() * (1 - 1e-9)) {
    throw TooCloseToBoundary(
        "neumann_derivative: node closer than one cell to the boundary");
  }
  const auto v = u.values();
  double acc = 0.0;
  for (const PairEntry& e : problem.kernel().entries) {
    if (e.i == node) acc += e.weight * phi_p(v[e.i] - v[e.j], e.exponent);
    if (e.j == node) acc += e.weight * phi_p(v[e.j] - v[e.i], e.exponent);
  }
  return acc / c.measure;
}

double bilinear_form(const GridFunction& u, const GridFunction& v,
                     const DiscreteProblem& problem) {
  const auto a = u.values();
  const auto b = v.values();
  double sum = 0.0;
  for (const PairEntry& e : problem.kernel().entries) {
    const double dv = b[e.i] - b[e.j];
    if (dv == 0.0) continue;
    sum += e.weight * phi_p(a[e.i] - a[e.j], e.exponent) * dv;
  }
  const auto m = problem.measure();
  const auto pb = problem.pbar();
  const auto beta = problem.beta();
  const Mesh& mesh = problem.mesh();
  for (std::uint32_t k : mesh.interior_ids()) {
    sum += m[k] * phi_p(a[k], pb[k]) * b[k];
  }
  for (std::uint32_t k : mesh.collar_ids()) {
    if (beta[k] != 0.0) sum += m[k] * beta[k] * phi_p(a[k], pb[k]) * b[k];
  }
  return sum;
}

IdentityResidual divergence_check(const AnalyticFunction& u,
                                  const ProblemSpec& spec,
                                  std::span<const int> resolutions) {
  IdentityResidual res;
  for (int n : resolutions) {
    const auto mesh = build_mesh(spec.domain, n, spec.pair_budget);
    const DivergenceParts parts = divergence_parts(u, spec, *mesh, nullptr);
    res.set(parts.interior, -parts.exterior);
    res.refinement_trace.emplace_back(n, res.abs_residual);
  }
  finish_trace(res);
  return res;
}

IdentityResidual green_check(const AnalyticFunction& u,
                             const AnalyticFunction& v,
                             const ProblemSpec& spec,
                             std::span<const int> resolutions) {
  IdentityResidual res;
  std::vector<PairNode> nodes;
  const OperatorSetting st = setting_for(spec, spec.domain.outer());
  for (int n : resolutions) {
    const auto mesh = build_mesh(spec.domain, n, spec.pair_budget);
    const auto& cells = mesh->cells();
    double lhs = 0.0;
    for_each_pair_fast(*mesh, [&](const CellPair& cp) {
      pair_rule(cells[cp.i], cells[cp.j], spec.quadrature, nodes);
      double acc = 0.0;
      for (const PairNode& q : nodes) {
        const double dv = v(q.x) - v(q.y);
        if (dv == 0.0) continue;
        acc += q.w * kernel_term(u, u(q.x), st, q.x, q.y) * dv;
      }
      lhs += 0.5 * cp.multiplicity * acc;
    });
    const DivergenceParts parts = divergence_parts(u, spec, *mesh, &v);
    res.set(lhs, parts.interior + parts.exterior);
    res.refinement_trace.emplace_back(n, res.abs_residual);
  }
  finish_trace(res);
  return res;
}

AntisymmetryResult interior_antisymmetry_check(const GridFunction& u,
                                               const ExponentField2& p,
                                               double s,
                                               const QuadratureOptions& opts) {
  const Mesh& mesh = u.mesh();
  AntisymmetryResult res;
  for (std::uint32_t i : mesh.interior_ids()) {
    for (std::uint32_t j : mesh.interior_ids()) {
      if (i == j) continue;
      const Cell& a = mesh.cell(i);
      const Cell& b = mesh.cell(j);
      const double k = kernel_weight(a, b, p, s, mesh.dim(), opts);
      const double term = k * phi_p(u[i] - u[j], p(a.center, b.center));
      res.sum += term;
      res.abs_sum += std::abs(term);
    }
  }
  res.passed = std::abs(res.sum) <= 1e-10 * res.abs_sum;
  return res;
}

MonotonicityResult scalar_monotonicity_check(int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ab(-10.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  MonotonicityResult res;
  res.samples = samples;
  res.min_monotone = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    const double a = ab(rng);
    const double b = ab(rng);
    const double p = 4.0 - 3.0 * unit(rng);  // (1, 4]
    const double fa = phi_p(a, p);
    const double fb = phi_p(b, p);
    const double m = (fa - fb) * (a - b);
    const double guard =
        1e-12 * (std::abs(fa) + std::abs(fb)) * (std::abs(a) + std::abs(b));
    res.min_monotone = std::min(res.min_monotone, m);
    if (m < -guard) ++res.monotone_violations;
    if (p >= 2.0) {
      ++res.simon_samples;
      if (std::pow(std::abs(a - b), p) > std::pow(2.0, p) * m + guard) {
        ++res.simon_violations;
      }
    }
  }
  res.passed = res.monotone_violations == 0;
  return res;
}

AnalyticFunction bump_function(const Box& support) {
  return [support](const Point& x) {
    double v = 1.0;
    for (int a = 0; a < support.dim; ++a) {
      const double half = 0.5 * support.width(a);
      const double t = (x[a] - 0.5 * (support.lower[a] + support.upper[a])) /
                       half;
      if (std::abs(t) >= 1.0) return 0.0;
      v *= std::exp(1.0 - 1.0 / (1.0 - t * t));
    }
    return v;
  };
}

AnalyticFunction smooth_profile(double a, double b, double c) {
  return [a, b, c](const Point& x) {
    return a + b * std::sin(c * x[0] + 0.3) * std::cos(0.5 * c * x[1]);
  };
}

}  // namespace fracrobin
