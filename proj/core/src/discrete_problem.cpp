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

#include "fracrobin/discrete_problem.hpp"

#include <algorithm>
#include <limits>

namespace fracrobin {

DiscreteProblem::DiscreteProblem(const ProblemSpec& spec,
                                 std::optional<int> resolution)
    : spec_(spec), resolution_(resolution.value_or(spec.resolution)) {
  mesh_ = build_mesh(spec_.domain, resolution_, spec_.pair_budget);
  kernel_ = build_pair_kernel(*mesh_, spec_.p, spec_.s, spec_.quadrature);

  const std::size_t n = mesh_->size();
  measure_.resize(n);
  pbar_.resize(n);
  q_.resize(n);
  r_.resize(n);
  V_.resize(n);
  beta_.resize(n);
  g_.resize(n);
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = -dmin;
  q_minus_ = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const Cell& c = mesh_->cell(k);
    measure_[k] = c.measure;
    pbar_[k] = fracrobin::pbar(spec_.p, c.center);
    q_[k] = spec_.q(c.center);
    r_[k] = spec_.r(c.center);
    V_[k] = spec_.V(c.center);
    beta_[k] = spec_.beta(c.center);
    g_[k] = spec_.g(c.center);
    dmin = std::min(dmin, pbar_[k]);
    dmax = std::max(dmax, pbar_[k]);
  }
  for (const auto& e : kernel_.entries) {
    dmin = std::min(dmin, e.exponent);
    dmax = std::max(dmax, e.exponent);
  }
  discrete_p_ = {dmin, dmax};
  p_bounds_ = spec_.p.bounds(spec_.domain.outer());
  q_minus_ = spec_.q.bounds(spec_.domain.interior).min;
}

}  // namespace fracrobin
