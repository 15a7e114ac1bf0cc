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

#include "fracrobin/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fracrobin/errors.hpp"
#include "fracrobin/operators.hpp"

namespace fracrobin {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Target exponent r'(x) q(x) of the embedding, on Omega.
NodalModular embedding_modular(const DiscreteProblem& problem) {
  const auto r = problem.r();
  const auto q = problem.q();
  std::vector<double> t(r.size());
  for (std::size_t k = 0; k < t.size(); ++k) {
    t[k] = conjugate_exponent(r[k]) * q[k];
  }
  return nodal_modular(problem.mesh(), t, problem.measure(),
                       RegionSel::interior);
}

double nodal_norm(const NodalModular& m, std::span<const double> u) {
  return nodal_luxemburg(m, u);
}

// A cheap upper bound on |u|_X: every Luxemburg norm of weights w_e and
// arguments bounded by L is at most L max(W^{1/p-}, W^{1/p+}), W = sum w_e.
class BallBound {
 public:
  explicit BallBound(const DiscreteProblem& problem) {
    for (const PairEntry& e : problem.kernel().entries) pair_w_ += 2 * e.weight;
    for (XPart part :
         {XPart::interior, XPart::g_weighted, XPart::beta_weighted}) {
      const NodalModular m = x_part_modular(problem, part);
      double w = 0.0;
      for (double x : m.weights) w += x;
      parts_.push_back({m.nodes, w});
    }
    pm_ = problem.discrete_p_minus();
    pp_ = problem.discrete_p_plus();
  }

  double operator()(std::span<const double> u) const {
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    double total = (*hi - *lo) * factor(pair_w_);
    for (const auto& [nodes, w] : parts_) {
      double l = 0.0;
      for (std::uint32_t k : nodes) l = std::max(l, std::abs(u[k]));
      total += l * factor(w);
    }
    return total;
  }

 private:
  double factor(double w) const {
    if (w <= 0.0) return 0.0;
    return std::max(std::pow(w, 1.0 / pm_), std::pow(w, 1.0 / pp_));
  }

  double pair_w_ = 0.0;
  std::vector<std::pair<std::vector<std::uint32_t>, double>> parts_;
  double pm_ = 2.0;
  double pp_ = 2.0;
};

}  // namespace

EmbeddingEstimate estimate_embedding_constant(const DiscreteProblem& problem,
                                              int restarts,
                                              std::uint64_t seed) {
  const NodalModular target = embedding_modular(problem);
  const std::size_t n = problem.mesh().size();
  const auto ratio = [&](const GridFunction& u) {
    const double x = x_norm(u, problem).total;
    return x > 0.0 ? nodal_norm(target, u.values()) / x : 0.0;
  };

  EmbeddingEstimate est;
  est.ratio_at_one = ratio(problem.constant(1.0));
  est.ratio = est.ratio_at_one;
  const int steps = problem.spec().solver.embedding_ascent_steps;
  for (int k = 0; k < restarts; ++k) {
    GridFunction u = random_grid_function(problem, seed + k);
    u = u * (1.0 / x_norm(u, problem).total);
    double best = ratio(u);
    double eta = 0.1;
    for (int it = 0; it < steps; ++it) {
      const double num = nodal_norm(target, u.values());
      const auto gn = nodal_norm_gradient(u.values(), target, n);
      const auto gx = x_norm_gradient(u, problem);
      const double x = x_norm(u, problem).total;
      std::vector<double> g(n);
      for (std::size_t j = 0; j < n; ++j) g[j] = gn[j] / num - gx[j] / x;
      const double gnorm = norm2(g);
      if (gnorm == 0.0) break;
      bool improved = false;
      for (int bt = 0; bt < 30 && !improved; ++bt) {
        std::vector<double> t(n);
        for (std::size_t j = 0; j < n; ++j) t[j] = u[j] + eta * g[j] / gnorm;
        GridFunction trial(problem.mesh_ptr(), std::move(t));
        const double xt = x_norm(trial, problem).total;
        if (xt <= 0.0) {
          eta *= 0.5;
          continue;
        }
        trial = trial * (1.0 / xt);
        const double r = ratio(trial);
        if (r > best) {
          best = r;
          u = std::move(trial);
          eta *= 2.0;
          improved = true;
        } else {
          eta *= 0.5;
        }
      }
      if (!improved) break;
    }
    est.per_restart.push_back(best);
    est.ratio = std::max(est.ratio, best);
  }
  est.alpha = est.ratio * problem.spec().solver.alpha_safety;
  return est;
}

double lambda_star_formula(double q_minus, double p_plus, double alpha,
                           double V_norm) {
  return q_minus / (4.0 * p_plus * std::pow(3.0, p_plus - 1.0) *
                    std::pow(alpha, q_minus) * V_norm);
}

double sphere_bound_formula(double rho, double p_plus) {
  return std::pow(rho, p_plus) / (2.0 * p_plus * std::pow(3.0, p_plus - 1.0));
}

ExistenceRegime existence_regime(const DiscreteProblem& problem, double alpha,
                                 std::optional<double> lambda) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  ExistenceRegime reg;
  reg.alpha = alpha;
  reg.q_minus = problem.q_minus();
  reg.p_plus = problem.p_plus();
  const NodalModular vm = nodal_modular(problem.mesh(), problem.r(),
                                        problem.measure(), RegionSel::interior);
  reg.V_norm = nodal_norm(vm, problem.V());
  if (!(reg.V_norm > 0.0)) throw InvalidArgument("V vanishes on Omega");
  reg.lambda_star =
      lambda_star_formula(reg.q_minus, reg.p_plus, alpha, reg.V_norm);
  reg.rho_ball =
      problem.spec().solver.rho_fraction * std::min(1.0, 1.0 / alpha);
  reg.sphere_bound_a = sphere_bound_formula(reg.rho_ball, reg.p_plus);
  reg.lambda_auto = !lambda.has_value();
  reg.lambda = lambda.value_or(0.5 * reg.lambda_star);
  reg.lambda_out_of_range = reg.lambda >= reg.lambda_star;
  reg.sphere_bound_chain =
      std::pow(reg.rho_ball, reg.q_minus) *
      (std::pow(reg.rho_ball, reg.p_plus - reg.q_minus) -
       0.5 * reg.lambda / reg.lambda_star) /
      (reg.p_plus * std::pow(3.0, reg.p_plus - 1.0));
  return reg;
}

AnalyticFunction plateau_bump(const Box& omega0) {
  const auto step = [](double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
  };
  return [omega0, step](const Point& x) {
    double v = 1.0;
    for (int a = 0; a < omega0.dim; ++a) {
      const double ramp = 0.25 * omega0.width(a);
      v *= step((x[a] - omega0.lower[a]) / ramp) *
           step((omega0.upper[a] - x[a]) / ramp);
    }
    return v;
  };
}

MountainReport mountain_geometry_check(const DiscreteProblem& problem,
                                       const ExistenceRegime& regime,
                                       int sphere_samples,
                                       std::uint64_t seed) {
  MountainReport rep;
  const double rho = regime.rho_ball;
  const double lambda = regime.lambda;
  rep.sphere_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k < sphere_samples; ++k) {
    const GridFunction w = random_grid_function(problem, seed + 7919u * k);
    // The X-norm is absolutely homogeneous, so one rescale lands on the
    // sphere; the recomputed norm checks it.
    const double c = rho / x_norm(w, problem).total;
    const GridFunction u = w * c;
    SpherePoint sp{c, x_norm(u, problem).total, energy(u, problem, lambda)};
    rep.sphere_norm_dev =
        std::max(rep.sphere_norm_dev, std::abs(sp.norm / rho - 1.0));
    rep.sphere_min = std::min(rep.sphere_min, sp.energy);
    rep.sphere.push_back(sp);
  }
  rep.sphere_positive = rep.sphere_min > 0.0;
  rep.sphere_above_a = rep.sphere_min >= regime.sphere_bound_a;

  rep.phi = interpolate(plateau_bump(problem.spec().omega0), problem.mesh_ptr());
  const double phi_norm = x_norm(rep.phi, problem).total;
  double best = std::numeric_limits<double>::infinity();
  bool seen_negative = false;
  for (int k = 1; k <= 64; ++k) {
    const double t = std::ldexp(1.0, -k);
    const double e = energy(rep.phi * t, problem, lambda);
    rep.ray.push_back({t, e, t * phi_norm});
    if (t * phi_norm <= rho && e < best) {
      best = e;
      rep.best_t = t;
    }
    if (k >= 10) {
      // Past the listed points, keep halving until the energy turns
      // negative and stops improving.
      if (e < 0.0) seen_negative = true;
      if (seen_negative && rep.ray.size() >= 2 &&
          e >= rep.ray[rep.ray.size() - 2].energy) {
        break;
      }
    }
  }
  rep.ray_negative = rep.ray.back().energy < 0.0;
  rep.ray_negative_listed = rep.ray[rep.listed_ray_points - 1].energy < 0.0;
  return rep;
}

double weak_residual(const GridFunction& u, const DiscreteProblem& problem,
                     double lambda, int directions, std::uint64_t seed) {
  double worst = 0.0;
  for (int k = 0; k < directions; ++k) {
    const GridFunction v = random_grid_function(problem, seed + 104729u * k);
    const double r = bilinear_form(u, v, problem) -
                     source_pairing(u, v, problem, lambda);
    worst = std::max(worst, std::abs(r) / (1.0 + x_norm(v, problem).total));
  }
  return worst;
}

BoundaryIdentity boundary_identity_check(const GridFunction& u,
                                         const DiscreteProblem& problem) {
  BoundaryIdentity b;
  const Mesh& mesh = problem.mesh();
  const auto op = discrete_operator(u, problem);
  const auto pb = problem.pbar();
  const auto beta = problem.beta();
  const auto g = problem.g();
  const double h = mesh.min_width();
  for (std::uint32_t k : mesh.collar_ids()) {
    if (mesh.interior().distance_to(mesh.cell(k).center) < h * (1 - 1e-9)) {
      continue;
    }
    const double val = op[k] + beta[k] * phi_p(u[k], pb[k]) - g[k];
    b.nodes.push_back(k);
    b.values.push_back(val);
    b.sup = std::max(b.sup, std::abs(val));
  }
  return b;
}

SolveResult minimize(const DiscreteProblem& problem,
                     const ExistenceRegime& regime, const GridFunction& start,
                     const SolveOptions& options) {
  const double rho = regime.rho_ball;
  const double lambda = regime.lambda;
  const BallBound bound(problem);
  SolveResult res;

  const auto project = [&](GridFunction& u) {
    if (bound(u.values()) <= rho) return;
    const double x = x_norm(u, problem).total;
    if (x > rho) {
      u = u * (rho / x);
      ++res.projections;
    }
  };

  GridFunction u = start;
  project(u);
  double e = energy(u, problem, lambda);
  GridFunction g = energy_gradient(u, problem, lambda);
  res.energy_trace.push_back(e);
  double alpha = 1.0;
  const std::size_t n = u.size();
  int it = 0;
  for (; it < options.max_iters; ++it) {
    if (norm2(g.values()) <= options.tol_grad) {
      res.converged = true;
      break;
    }
    bool accepted = false;
    GridFunction trial;
    double et = 0.0;
    for (int bt = 0; bt < 80; ++bt) {
      std::vector<double> t(n);
      for (std::size_t k = 0; k < n; ++k) t[k] = u[k] - alpha * g[k];
      trial = GridFunction(problem.mesh_ptr(), std::move(t));
      project(trial);
      et = energy(trial, problem, lambda);
      double dec = 0.0;
      bool moved = false;
      for (std::size_t k = 0; k < n; ++k) {
        dec += g[k] * (trial[k] - u[k]);
        moved = moved || trial[k] != u[k];
      }
      if (!moved) break;
      if (et <= e + options.armijo * dec && et <= e) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      res.line_search_failed = true;
      break;
    }
    GridFunction gt = energy_gradient(trial, problem, lambda);
    double sy = 0.0;
    double ss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double s = trial[k] - u[k];
      sy += s * (gt[k] - g[k]);
      ss += s * s;
    }
    alpha = sy > 0.0 ? ss / sy : 2.0 * alpha;
    alpha = std::clamp(alpha, 1e-12, 1e12);
    u = std::move(trial);
    g = std::move(gt);
    e = et;
    res.energy_trace.push_back(e);
  }
  if (!res.converged && norm2(g.values()) <= options.tol_grad) {
    res.converged = true;
  }

  res.iterations = it;
  res.energy = e;
  res.gradient_norm = norm2(g.values());
  res.norm = x_norm(u, problem);
  res.strictly_interior = res.norm.total < rho;
  res.weak_residual = weak_residual(u, problem, lambda,
                                    options.weak_test_directions, options.seed);
  res.boundary_residual = boundary_identity_check(u, problem).sup;
  res.u_lambda = std::move(u);
  return res;
}

CoercivityReport coercivity_check(const DiscreteProblem& problem,
                                  const std::vector<double>& scales,
                                  std::uint64_t seed) {
  CoercivityReport rep;
  rep.scales = scales;
  GridFunction u = random_grid_function(problem, seed);
  u = u * (1.0 / x_norm(u, problem).total);
  const double pm = problem.discrete_p_minus();
  rep.bound_holds = true;
  rep.x_bound_holds = true;
  rep.pairing_dominates = true;
  for (double c : scales) {
    const GridFunction v = u * c;
    const double pairing = modular_derivative_pairing(v, problem);
    const double xn = x_norm(v, problem).total;
    const double eq = equivalent_norm(v, problem);
    rep.ratios.push_back(pairing / xn);
    rep.x_bounds.push_back(std::pow(xn, pm - 1.0));
    rep.eq_ratios.push_back(pairing / eq);
    rep.eq_bounds.push_back(std::pow(eq, pm - 1.0));
    if (eq > 1.0 && rep.eq_ratios.back() < rep.eq_bounds.back() * (1 - 1e-10)) {
      rep.bound_holds = false;
    }
    if (xn > 1.0 && rep.ratios.back() < rep.x_bounds.back() * (1 - 1e-10)) {
      rep.x_bound_holds = false;
    }
    if (pairing < x_modular(v, problem) * (1 - 1e-12)) {
      rep.pairing_dominates = false;
    }
  }
  rep.monotone = true;
  for (std::size_t k = 1; k < rep.ratios.size(); ++k) {
    if (rep.ratios[k] < rep.ratios[k - 1] * (1 - 1e-12)) rep.monotone = false;
  }
  return rep;
}

}  // namespace fracrobin
