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

#include "fracrobin/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/toms748_solve.hpp>

#include "fracrobin/errors.hpp"

namespace fracrobin {
namespace {

constexpr double kTauTol = 1e-10;
constexpr int kMaxSteps = 200;

inline double phi(double d, double p) {
  return std::copysign(std::pow(std::abs(d), p - 1.0), d);
}

// sum_e w_e |a_e / tau|^{p_e}, collapsed to one power when all p_e agree.
class PowerSum {
 public:
  void add(double w, double a, double p) {
    a = std::abs(a);
    if (w == 0.0 || a == 0.0) return;
    if (c_.empty()) p0_ = p;
    uniform_ = uniform_ && p == p0_;
    c_.push_back(std::log(w) + p * std::log(a));
    p_.push_back(p);
    total_ += w * std::pow(a, p);
  }

  double operator()(double tau) const {
    if (uniform_) return total_ * std::pow(tau, -p0_);
    const double lt = std::log(tau);
    double sum = 0.0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      sum += std::exp(c_[k] - p_[k] * lt);
    }
    return sum;
  }

  double norm() const {
    return luxemburg_solve([this](double tau) { return (*this)(tau); }).tau;
  }

 private:
  std::vector<double> c_, p_;  // log(w a^p) and p
  double p0_ = 0.0;
  double total_ = 0.0;
  bool uniform_ = true;
};

PowerSum nodal_terms(const NodalModular& m, std::span<const double> u) {
  PowerSum ps;
  for (std::size_t k = 0; k < m.nodes.size(); ++k) {
    ps.add(m.weights[k], u[m.nodes[k]], m.exponents[k]);
  }
  return ps;
}

PowerSum pair_terms(std::span<const double> v, const PairKernel& kernel,
                    bool inv_p_weight) {
  PowerSum ps;
  for (const PairEntry& e : kernel.entries) {
    const double w = inv_p_weight ? 2.0 * e.weight / e.exponent : 2.0 * e.weight;
    ps.add(w, v[e.i] - v[e.j], e.exponent);
  }
  return ps;
}

}  // namespace

double nodal_luxemburg(const NodalModular& m, std::span<const double> u) {
  return nodal_terms(m, u).norm();
}

double NodalModular::operator()(std::span<const double> u, double tau) const {
  const double inv = 1.0 / tau;
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const double a = std::abs(u[nodes[k]]) * inv;
    if (a != 0.0) sum += weights[k] * std::pow(a, exponents[k]);
  }
  return sum;
}

NodalModular nodal_modular(const Mesh& mesh, const ScalarField& p,
                           const ScalarField* weight, RegionSel region) {
  NodalModular m;
  for (std::uint32_t k = 0; k < mesh.size(); ++k) {
    const Cell& c = mesh.cell(k);
    if (!selected(c.region, region)) continue;
    const double w = c.measure * (weight ? (*weight)(c.center) : 1.0);
    if (w == 0.0) continue;
    m.nodes.push_back(k);
    m.weights.push_back(w);
    m.exponents.push_back(p(c.center));
  }
  return m;
}

NodalModular nodal_modular(const Mesh& mesh, std::span<const double> p,
                           std::span<const double> weight, RegionSel region) {
  NodalModular m;
  for (std::uint32_t k = 0; k < mesh.size(); ++k) {
    const Cell& c = mesh.cell(k);
    if (!selected(c.region, region) || weight[k] == 0.0) continue;
    m.nodes.push_back(k);
    m.weights.push_back(weight[k]);
    m.exponents.push_back(p[k]);
  }
  return m;
}

LuxemburgResult luxemburg_solve(const std::function<double(double)>& scaled) {
  LuxemburgResult res;
  const double m1 = scaled(1.0);
  if (!std::isfinite(m1)) {
    throw BracketFailure("modular is not finite at tau = 1");
  }
  if (m1 == 0.0) return res;

  // Invariant: scaled(lo) > 1 >= scaled(hi).
  double lo = 1.0;
  double hi = 1.0;
  int steps = 0;
  if (m1 > 1.0) {
    hi = 2.0;
    for (double m = scaled(hi); m > 1.0; m = scaled(hi)) {
      if (++steps > kMaxSteps || !std::isfinite(m)) {
        throw BracketFailure("doubling failed to bracket the unit level");
      }
      lo = hi;
      hi *= 2.0;
    }
  } else {
    lo = 0.5;
    for (double m = scaled(lo); m <= 1.0; m = scaled(lo)) {
      if (++steps > kMaxSteps) {
        throw BracketFailure("halving failed to bracket the unit level");
      }
      hi = lo;
      lo *= 0.5;
    }
  }

  // TOMS 748 keeps a sign-changing bracket and shrinks it superlinearly.
  if (scaled(hi) == 1.0) {
    lo = hi;
  } else {
    std::uintmax_t it = kMaxSteps;
    const auto [a, b] = boost::math::tools::toms748_solve(
        [&](double tau) { return scaled(tau) - 1.0; }, lo, hi,
        [](double x, double y) { return std::abs(y - x) <= kTauTol * std::abs(y); },
        it);
    lo = a;
    hi = b;
    steps += static_cast<int>(it);
  }
  res.tau = 0.5 * (lo + hi);
  res.modular = scaled(res.tau);
  res.iterations = steps;
  return res;
}

ModularDescriptor ModularDescriptor::lebesgue(ScalarField p,
                                              std::optional<ScalarField> w,
                                              RegionSel region) {
  ModularDescriptor d;
  d.kind = ModularKind::lebesgue;
  d.exponent = std::move(p);
  d.weight = std::move(w);
  d.region = region;
  return d;
}

ModularDescriptor ModularDescriptor::gagliardo(const PairKernel& kernel,
                                               bool inv_p_weight) {
  ModularDescriptor d;
  d.kind = ModularKind::gagliardo;
  d.kernel = &kernel;
  d.inv_p_weight = inv_p_weight;
  d.region = RegionSel::all;
  return d;
}

ModularDescriptor ModularDescriptor::x(const DiscreteProblem& problem) {
  ModularDescriptor d;
  d.kind = ModularKind::x_modular;
  d.problem = &problem;
  d.region = RegionSel::all;
  return d;
}

namespace {

std::function<double(double)> scaled_modular(const GridFunction& u,
                                             const ModularDescriptor& desc,
                                             NodalModular& storage) {
  switch (desc.kind) {
    case ModularKind::lebesgue:
      storage = nodal_modular(u.mesh(), desc.exponent,
                              desc.weight ? &*desc.weight : nullptr,
                              desc.region);
      return [&u, &storage](double tau) { return storage(u.values(), tau); };
    case ModularKind::gagliardo:
      if (!desc.kernel) throw InvalidArgument("gagliardo modular needs a kernel");
      return [&u, &desc](double tau) {
        return gagliardo_modular(u, *desc.kernel, desc.inv_p_weight, tau);
      };
    case ModularKind::x_modular:
      if (!desc.problem) throw InvalidArgument("x modular needs a problem");
      return [&u, &desc](double tau) {
        return x_modular(u, *desc.problem, tau);
      };
  }
  throw InvalidArgument("unknown modular kind");
}

}  // namespace

ModularValue evaluate_modular(const GridFunction& u,
                              const ModularDescriptor& desc) {
  NodalModular storage;
  const auto f = scaled_modular(u, desc, storage);
  return {f(1.0), desc.region, desc.kind};
}

double luxemburg_norm(const GridFunction& u, const ModularDescriptor& desc) {
  switch (desc.kind) {
    case ModularKind::lebesgue:
      return nodal_luxemburg(
          nodal_modular(u.mesh(), desc.exponent,
                        desc.weight ? &*desc.weight : nullptr, desc.region),
          u.values());
    case ModularKind::gagliardo:
      if (!desc.kernel) throw InvalidArgument("gagliardo modular needs a kernel");
      return pair_terms(u.values(), *desc.kernel, desc.inv_p_weight).norm();
    case ModularKind::x_modular:
      if (!desc.problem) throw InvalidArgument("x modular needs a problem");
      return equivalent_norm(u, *desc.problem);
  }
  throw InvalidArgument("unknown modular kind");
}

double lebesgue_modular(const GridFunction& u, const ScalarField& p,
                        const ScalarField* weight, RegionSel region) {
  return nodal_modular(u.mesh(), p, weight, region)(u.values());
}

double lebesgue_norm(const GridFunction& u, const ScalarField& p,
                     const ScalarField* weight, RegionSel region) {
  return nodal_luxemburg(nodal_modular(u.mesh(), p, weight, region),
                         u.values());
}

double gagliardo_modular(const GridFunction& u, const PairKernel& kernel,
                         bool inv_p_weight, double tau) {
  const double inv = 1.0 / tau;
  const auto v = u.values();
  double sum = 0.0;
  for (const PairEntry& e : kernel.entries) {
    const double d = std::abs(v[e.i] - v[e.j]) * inv;
    if (d == 0.0) continue;
    double term = e.weight * std::pow(d, e.exponent);
    if (inv_p_weight) term /= e.exponent;
    sum += term;
  }
  return 2.0 * sum;
}

double gagliardo_modular(const GridFunction& u, const ExponentField2& p,
                         double s, bool inv_p_weight,
                         const QuadratureOptions& opts) {
  const PairKernel kernel = build_pair_kernel(u.mesh(), p, s, opts);
  return gagliardo_modular(u, kernel, inv_p_weight);
}

double gagliardo_seminorm(const GridFunction& u, const PairKernel& kernel) {
  return pair_terms(u.values(), kernel, false).norm();
}

NodalModular x_part_modular(const DiscreteProblem& problem, XPart part) {
  const Mesh& mesh = problem.mesh();
  const auto m = problem.measure();
  std::vector<double> w(mesh.size(), 0.0);
  RegionSel region = RegionSel::interior;
  switch (part) {
    case XPart::interior:
      for (std::size_t k = 0; k < w.size(); ++k) w[k] = m[k];
      break;
    case XPart::g_weighted:
      region = RegionSel::collar;
      for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = m[k] * std::abs(problem.g()[k]);
      }
      break;
    case XPart::beta_weighted:
      region = RegionSel::collar;
      for (std::size_t k = 0; k < w.size(); ++k) {
        w[k] = m[k] * problem.beta()[k];
      }
      break;
  }
  return nodal_modular(mesh, problem.pbar(), w, region);
}

NormBreakdown x_norm(const GridFunction& u, const DiscreteProblem& problem) {
  NormBreakdown b;
  b.seminorm = gagliardo_seminorm(u, problem.kernel());
  const auto part_norm = [&](XPart part) {
    const NodalModular m = x_part_modular(problem, part);
    if (m.empty()) return 0.0;
    return nodal_luxemburg(m, u.values());
  };
  b.interior_lebesgue = part_norm(XPart::interior);
  b.g_weighted = part_norm(XPart::g_weighted);
  b.beta_weighted = part_norm(XPart::beta_weighted);
  b.total = b.seminorm + b.interior_lebesgue + b.g_weighted + b.beta_weighted;
  return b;
}

double x_modular(const GridFunction& u, const DiscreteProblem& problem,
                 double tau) {
  const double inv = 1.0 / tau;
  const auto v = u.values();
  const auto m = problem.measure();
  const auto pb = problem.pbar();
  const auto beta = problem.beta();
  const auto g = problem.g();
  double sum = gagliardo_modular(u, problem.kernel(), true, tau);
  const Mesh& mesh = problem.mesh();
  for (std::uint32_t k : mesh.interior_ids()) {
    const double a = std::abs(v[k]) * inv;
    if (a != 0.0) sum += m[k] * std::pow(a, pb[k]) / pb[k];
  }
  for (std::uint32_t k : mesh.collar_ids()) {
    const double w = std::abs(g[k]) + beta[k];
    const double a = std::abs(v[k]) * inv;
    if (w != 0.0 && a != 0.0) sum += m[k] * w * std::pow(a, pb[k]) / pb[k];
  }
  return sum;
}

double equivalent_norm(const GridFunction& u, const DiscreteProblem& problem) {
  const auto v = u.values();
  PowerSum ps = pair_terms(v, problem.kernel(), true);
  const auto m = problem.measure();
  const auto pb = problem.pbar();
  const Mesh& mesh = problem.mesh();
  for (std::uint32_t k : mesh.interior_ids()) ps.add(m[k] / pb[k], v[k], pb[k]);
  for (std::uint32_t k : mesh.collar_ids()) {
    const double w = std::abs(problem.g()[k]) + problem.beta()[k];
    ps.add(m[k] * w / pb[k], v[k], pb[k]);
  }
  return ps.norm();
}

std::vector<double> nodal_norm_gradient(std::span<const double> u,
                                        const NodalModular& modular,
                                        std::size_t size) {
  std::vector<double> grad(size, 0.0);
  if (modular.empty()) return grad;
  const double tau = nodal_luxemburg(modular, u);
  if (tau == 0.0) return grad;
  double denom = 0.0;
  for (std::size_t k = 0; k < modular.nodes.size(); ++k) {
    const double a = u[modular.nodes[k]] / tau;
    const double p = modular.exponents[k];
    denom += modular.weights[k] * p * std::pow(std::abs(a), p);
    grad[modular.nodes[k]] = modular.weights[k] * p * phi(a, p);
  }
  for (double& gk : grad) gk /= denom;
  return grad;
}

std::vector<double> x_norm_gradient(const GridFunction& u,
                                    const DiscreteProblem& problem) {
  const std::size_t n = u.size();
  const auto v = u.values();
  std::vector<double> grad(n, 0.0);

  const auto& kernel = problem.kernel();
  const double tau = gagliardo_seminorm(u, kernel);
  if (tau > 0.0) {
    std::vector<double> pg(n, 0.0);
    double denom = 0.0;
    for (const PairEntry& e : kernel.entries) {
      const double d = (v[e.i] - v[e.j]) / tau;
      if (d == 0.0) continue;
      const double c = 2.0 * e.weight * e.exponent;
      denom += c * std::pow(std::abs(d), e.exponent);
      const double f = c * phi(d, e.exponent);
      pg[e.i] += f;
      pg[e.j] -= f;
    }
    for (std::size_t k = 0; k < n; ++k) grad[k] += pg[k] / denom;
  }
  for (XPart part : {XPart::interior, XPart::g_weighted, XPart::beta_weighted}) {
    const auto pg = nodal_norm_gradient(v, x_part_modular(problem, part), n);
    for (std::size_t k = 0; k < n; ++k) grad[k] += pg[k];
  }
  return grad;
}

HolderPairing holder_pairing(const GridFunction& u, const GridFunction& v,
                             const ScalarField& p, RegionSel region) {
  const Mesh& mesh = u.mesh();
  NodalModular mp;
  NodalModular mq;
  HolderPairing h;
  h.p_minus = std::numeric_limits<double>::infinity();
  h.q_minus = h.p_minus;
  double pair = 0.0;
  for (std::uint32_t k = 0; k < mesh.size(); ++k) {
    const Cell& c = mesh.cell(k);
    if (!selected(c.region, region)) continue;
    const double pk = p(c.center);
    const double qk = conjugate_exponent(pk);
    mp.nodes.push_back(k);
    mp.weights.push_back(c.measure);
    mp.exponents.push_back(pk);
    mq.nodes.push_back(k);
    mq.weights.push_back(c.measure);
    mq.exponents.push_back(qk);
    h.p_minus = std::min(h.p_minus, pk);
    h.q_minus = std::min(h.q_minus, qk);
    pair += c.measure * u[k] * v[k];
  }
  h.lhs = std::abs(pair);
  h.norm_u = nodal_luxemburg(mp, u.values());
  h.norm_v = nodal_luxemburg(mq, v.values());
  h.rhs_bound = (1.0 / h.p_minus + 1.0 / h.q_minus) * h.norm_u * h.norm_v;
  return h;
}

}  // namespace fracrobin
