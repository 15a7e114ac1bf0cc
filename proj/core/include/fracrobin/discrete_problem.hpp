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

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fracrobin/mesh.hpp"
#include "fracrobin/problem.hpp"
#include "fracrobin/quadrature.hpp"

namespace fracrobin {

// A ProblemSpec realized on a mesh: the pair kernel plus every coefficient
// sampled at the nodes. Immutable after construction.
class DiscreteProblem {
 public:
  explicit DiscreteProblem(const ProblemSpec& spec,
                           std::optional<int> resolution = {});

  const ProblemSpec& spec() const { return spec_; }
  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  const PairKernel& kernel() const { return kernel_; }
  int resolution() const { return resolution_; }

  std::span<const double> measure() const { return measure_; }
  std::span<const double> pbar() const { return pbar_; }
  std::span<const double> q() const { return q_; }
  std::span<const double> r() const { return r_; }
  std::span<const double> V() const { return V_; }
  std::span<const double> beta() const { return beta_; }
  std::span<const double> g() const { return g_; }

  // Bounds of p over the computational domain (declared or analytic).
  double p_minus() const { return p_bounds_.min; }
  double p_plus() const { return p_bounds_.max; }
  // Extremes over the discrete data actually present in the modulars.
  double discrete_p_minus() const { return discrete_p_.min; }
  double discrete_p_plus() const { return discrete_p_.max; }
  double q_minus() const { return q_minus_; }

  GridFunction zeros() const { return GridFunction(mesh_, 0.0); }
  GridFunction constant(double c) const { return GridFunction(mesh_, c); }

 private:
  ProblemSpec spec_;
  int resolution_;
  std::shared_ptr<const Mesh> mesh_;
  PairKernel kernel_;
  std::vector<double> measure_, pbar_, q_, r_, V_, beta_, g_;
  Bounds p_bounds_{};
  Bounds discrete_p_{};
  double q_minus_ = 0.0;
};

}  // namespace fracrobin
