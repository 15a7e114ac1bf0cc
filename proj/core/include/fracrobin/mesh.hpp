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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fracrobin/geometry.hpp"
#include "fracrobin/problem.hpp"

namespace fracrobin {

enum class Region : std::uint8_t { interior, collar };
enum class RegionSel : std::uint8_t { interior, collar, all };

inline bool selected(Region r, RegionSel sel) {
  return sel == RegionSel::all ||
         (sel == RegionSel::interior && r == Region::interior) ||
         (sel == RegionSel::collar && r == Region::collar);
}

struct Cell {
  Point center{};
  Box box{};
  double measure = 0.0;
  Region region = Region::interior;
  std::array<int, 2> index{0, 0};  // integer position on the tensor grid
};

class Mesh {
 public:
  Mesh() = default;
  // Cells must carry consistent grid indices; `width` is the uniform cell
  // width per axis.
  Mesh(int dim, Point width, std::vector<Cell> cells, Box outer, Box interior);

  int dim() const { return dim_; }
  const Point& width() const { return width_; }
  double min_width() const;
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t i) const { return cells_[i]; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<std::uint32_t>& interior_ids() const { return interior_; }
  const std::vector<std::uint32_t>& collar_ids() const { return collar_; }
  const Box& outer() const { return outer_; }
  const Box& interior() const { return interior_box_; }

  double region_measure(RegionSel sel) const;
  // Unordered pairs (i <= j) that are not collar x collar.
  std::size_t pair_count() const;

 private:
  int dim_ = 1;
  Point width_{0.0, 0.0};
  std::vector<Cell> cells_;
  std::vector<std::uint32_t> interior_;
  std::vector<std::uint32_t> collar_;
  Box outer_{};
  Box interior_box_{};
};

// Uniform tensor grid: `resolution` cells per axis across Omega, the same
// width across the collar, which extends ceil(R / h) cells past each face.
// Cells are ordered lexicographically by grid index (last axis slowest).
// Throws InvalidArgument for resolution < 4, MeshTooLarge when the pair
// count exceeds `pair_budget`.
std::shared_ptr<const Mesh> build_mesh(const Domain& domain, int resolution,
                                       std::size_t pair_budget = 50'000'000);

class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::shared_ptr<const Mesh> mesh, std::vector<double> values);
  explicit GridFunction(std::shared_ptr<const Mesh> mesh, double fill = 0.0);

  const Mesh& mesh() const { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const { return mesh_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::vector<double>& data() { return values_; }

  GridFunction operator*(double c) const;
  GridFunction operator+(const GridFunction& o) const;
  GridFunction operator-(const GridFunction& o) const;

 private:
  std::shared_ptr<const Mesh> mesh_;
  std::vector<double> values_;
};

using AnalyticFunction = std::function<double(const Point&)>;

// Values of f at cell centers; throws NonFiniteValue if any is NaN or inf.
GridFunction interpolate(const AnalyticFunction& f,
                         std::shared_ptr<const Mesh> mesh);

struct CellPair {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double weight = 0.0;   // measure_i * measure_j
  int multiplicity = 2;  // times the pair occurs in the ordered double integral
  bool self = false;     // i == j, the singular diagonal
};

// Walks the unordered cell pairs of (Omega u collar)^2 minus collar^2, rows
// i in [row_begin, row_end), emitting each pair once with i <= j.
void for_each_pair(const Mesh& mesh,
                   const std::function<void(const CellPair&)>& visit,
                   std::size_t row_begin = 0,
                   std::size_t row_end = static_cast<std::size_t>(-1));

// Template version for hot loops.
template <typename Visit>
void for_each_pair_fast(const Mesh& mesh, Visit&& visit) {
  const auto& cells = mesh.cells();
  const std::uint32_t n = static_cast<std::uint32_t>(cells.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    const bool ci = cells[i].region == Region::collar;
    for (std::uint32_t j = i; j < n; ++j) {
      if (ci && cells[j].region == Region::collar) continue;
      visit(CellPair{i, j, cells[i].measure * cells[j].measure, i == j ? 1 : 2,
                     i == j});
    }
  }
}

}  // namespace fracrobin
