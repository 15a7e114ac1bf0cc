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

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "fracrobin/config.hpp"
#include "fracrobin/mesh.hpp"

namespace fracrobin::testing {

inline Domain unit_domain(int dim = 1, double radius = 1.0) {
  Domain d;
  d.dim = dim;
  d.interior = Box{dim, {0.0, 0.0}, {1.0, dim == 2 ? 1.0 : 0.0}};
  d.collar_radius = radius;
  return d;
}

inline std::shared_ptr<const Mesh> unit_mesh(int n, int dim = 1,
                                             double radius = 1.0) {
  return build_mesh(unit_domain(dim, radius), n);
}

inline GridFunction random_values(std::shared_ptr<const Mesh> mesh,
                                  std::mt19937_64& rng, double lo = -1.0,
                                  double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  GridFunction u(mesh, 0.0);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = d(rng);
  return u;
}

// Bisection on a decreasing function f with f(lo) > 0 > f(hi).
template <typename F>
double bisect(F f, double lo, double hi, int steps = 200) {
  for (int k = 0; k < steps; ++k) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

}  // namespace fracrobin::testing
