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
#include <cmath>

namespace fracrobin {

// Points carry two coordinates; in 1D the second one is identically zero, so
// every sum or distance over both coordinates is also correct in 1D.
using Point = std::array<double, 2>;

inline double distance(const Point& x, const Point& y) {
  return std::hypot(x[0] - y[0], x[1] - y[1]);
}

inline double coordinate_sum(const Point& x) { return x[0] + x[1]; }

struct Box {
  int dim = 1;
  Point lower{0.0, 0.0};
  Point upper{1.0, 0.0};

  double width(int axis) const { return upper[axis] - lower[axis]; }

  double measure() const {
    double m = 1.0;
    for (int a = 0; a < dim; ++a) m *= width(a);
    return m;
  }

  double diameter() const {
    double d2 = 0.0;
    for (int a = 0; a < dim; ++a) d2 += width(a) * width(a);
    return std::sqrt(d2);
  }

  Point center() const {
    Point c{0.0, 0.0};
    for (int a = 0; a < dim; ++a) c[a] = 0.5 * (lower[a] + upper[a]);
    return c;
  }

  bool contains(const Point& x) const {
    for (int a = 0; a < dim; ++a) {
      if (x[a] < lower[a] || x[a] > upper[a]) return false;
    }
    return true;
  }

  bool strictly_contains(const Point& x) const {
    for (int a = 0; a < dim; ++a) {
      if (x[a] <= lower[a] || x[a] >= upper[a]) return false;
    }
    return true;
  }

  bool contains(const Box& other) const {
    for (int a = 0; a < dim; ++a) {
      if (other.lower[a] < lower[a] || other.upper[a] > upper[a]) return false;
    }
    return true;
  }

  // Euclidean distance from x to the box; zero inside.
  double distance_to(const Point& x) const {
    double d2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      double d = 0.0;
      if (x[a] < lower[a]) d = lower[a] - x[a];
      if (x[a] > upper[a]) d = x[a] - upper[a];
      d2 += d * d;
    }
    return std::sqrt(d2);
  }

  Box enlarged(double r) const {
    Box b = *this;
    for (int a = 0; a < dim; ++a) {
      b.lower[a] -= r;
      b.upper[a] += r;
    }
    return b;
  }
};

}  // namespace fracrobin
