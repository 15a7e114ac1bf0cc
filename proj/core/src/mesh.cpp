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

#include "fracrobin/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracrobin/errors.hpp"

namespace fracrobin {

Mesh::Mesh(int dim, Point width, std::vector<Cell> cells, Box outer,
           Box interior)
    : dim_(dim),
      width_(width),
      cells_(std::move(cells)),
      outer_(outer),
      interior_box_(interior) {
  for (std::uint32_t i = 0; i < cells_.size(); ++i) {
    (cells_[i].region == Region::interior ? interior_ : collar_).push_back(i);
  }
}

double Mesh::min_width() const {
  double h = width_[0];
  for (int a = 1; a < dim_; ++a) h = std::min(h, width_[a]);
  return h;
}

double Mesh::region_measure(RegionSel sel) const {
  double m = 0.0;
  for (const auto& c : cells_) {
    if (selected(c.region, sel)) m += c.measure;
  }
  return m;
}

std::size_t Mesh::pair_count() const {
  const std::size_t n = cells_.size();
  const std::size_t c = collar_.size();
  return n * (n + 1) / 2 - c * (c + 1) / 2;
}

std::shared_ptr<const Mesh> build_mesh(const Domain& domain, int resolution,
                                       std::size_t pair_budget) {
  const int dim = domain.dim;
  if (dim != 1 && dim != 2) {
    throw InvalidArgument("dimension must be 1 or 2, got " +
                          std::to_string(dim));
  }
  if (resolution < 4) {
    throw InvalidArgument("mesh resolution must be >= 4, got " +
                          std::to_string(resolution));
  }
  const Box& omega = domain.interior;
  Point h{0.0, 0.0};
  std::array<int, 2> collar_cells{0, 0};
  std::array<int, 2> total{1, 1};
  Box outer = omega;
  for (int a = 0; a < dim; ++a) {
    if (!(omega.width(a) > 0.0)) {
      throw InvalidArgument("interior box is degenerate along axis " +
                            std::to_string(a));
    }
    h[a] = omega.width(a) / resolution;
    if (domain.collar_radius < h[a] * (1.0 - 1e-12)) {
      throw InvalidArgument("collar radius must be at least one cell width");
    }
    collar_cells[a] =
        static_cast<int>(std::ceil(domain.collar_radius / h[a] - 1e-9));
    total[a] = resolution + 2 * collar_cells[a];
    outer.lower[a] = omega.lower[a] - collar_cells[a] * h[a];
    outer.upper[a] = omega.upper[a] + collar_cells[a] * h[a];
  }

  const std::size_t n_all = static_cast<std::size_t>(total[0]) * total[1];
  const std::size_t n_int =
      static_cast<std::size_t>(resolution) * (dim == 2 ? resolution : 1);
  const std::size_t n_col = n_all - n_int;
  const std::size_t pairs = n_all * (n_all + 1) / 2 - n_col * (n_col + 1) / 2;
  if (pairs > pair_budget) {
    throw MeshTooLarge("mesh would have " + std::to_string(pairs) +
                       " cell pairs, budget is " + std::to_string(pair_budget));
  }

  std::vector<Cell> cells;
  cells.reserve(n_all);
  for (int iy = 0; iy < total[1]; ++iy) {
    for (int ix = 0; ix < total[0]; ++ix) {
      Cell c;
      c.index = {ix, iy};
      c.box.dim = dim;
      bool inside = true;
      c.measure = 1.0;
      for (int a = 0; a < dim; ++a) {
        const int k = a == 0 ? ix : iy;
        c.box.lower[a] = outer.lower[a] + k * h[a];
        c.box.upper[a] = outer.lower[a] + (k + 1) * h[a];
        c.center[a] = outer.lower[a] + (k + 0.5) * h[a];
        c.measure *= h[a];
        if (k < collar_cells[a] || k >= collar_cells[a] + resolution) {
          inside = false;
        }
      }
      c.region = inside ? Region::interior : Region::collar;
      cells.push_back(c);
    }
  }
  return std::make_shared<const Mesh>(dim, h, std::move(cells), outer, omega);
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(std::shared_ptr<const Mesh> mesh,
                           std::vector<double> values)
    : mesh_(std::move(mesh)), values_(std::move(values)) {
  if (values_.size() != mesh_->size()) {
    throw InvalidArgument("grid function has " +
                          std::to_string(values_.size()) + " values for " +
                          std::to_string(mesh_->size()) + " nodes");
  }
}

GridFunction::GridFunction(std::shared_ptr<const Mesh> mesh, double fill)
    : mesh_(std::move(mesh)), values_(mesh_->size(), fill) {}

GridFunction GridFunction::operator*(double c) const {
  GridFunction r = *this;
  for (auto& v : r.values_) v *= c;
  return r;
}

GridFunction GridFunction::operator+(const GridFunction& o) const {
  GridFunction r = *this;
  for (std::size_t k = 0; k < values_.size(); ++k) r.values_[k] += o.values_[k];
  return r;
}

GridFunction GridFunction::operator-(const GridFunction& o) const {
  GridFunction r = *this;
  for (std::size_t k = 0; k < values_.size(); ++k) r.values_[k] -= o.values_[k];
  return r;
}

GridFunction interpolate(const AnalyticFunction& f,
                         std::shared_ptr<const Mesh> mesh) {
  std::vector<double> values(mesh->size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const Point& x = mesh->cell(k).center;
    values[k] = f(x);
    if (!std::isfinite(values[k])) {
      throw NonFiniteValue("interpolated value at node " + std::to_string(k) +
                           " (x = " + std::to_string(x[0]) +
                           ") is not finite");
    }
  }
  return GridFunction(std::move(mesh), std::move(values));
}

void for_each_pair(const Mesh& mesh,
                   const std::function<void(const CellPair&)>& visit,
                   std::size_t row_begin, std::size_t row_end) {
  const auto& cells = mesh.cells();
  const std::size_t n = cells.size();
  row_end = std::min(row_end, n);
  for (std::size_t i = row_begin; i < row_end; ++i) {
    const bool ci = cells[i].region == Region::collar;
    for (std::size_t j = i; j < n; ++j) {
      if (ci && cells[j].region == Region::collar) continue;
      visit(CellPair{static_cast<std::uint32_t>(i),
                     static_cast<std::uint32_t>(j),
                     cells[i].measure * cells[j].measure, i == j ? 1 : 2,
                     i == j});
    }
  }
}

}  // namespace fracrobin
