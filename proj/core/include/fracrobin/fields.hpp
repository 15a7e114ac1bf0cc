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

#include <optional>
#include <string>
#include <vector>

#include "fracrobin/geometry.hpp"

namespace fracrobin {

struct Bounds {
  double min = 0.0;
  double max = 0.0;
  bool contains(double v, double tol = 0.0) const {
    return v >= min - tol && v <= max + tol;
  }
};

enum class FieldPreset { constant, affine, sinusoidal, separable_sum };
enum class Trig { sin, cos };
enum class FieldRegion { interior, collar, both };

std::string to_string(FieldPreset preset);
std::string to_string(FieldRegion region);

// A coefficient or exponent on the computational domain, drawn from a small
// closed family of presets:
//   constant       c
//   affine         c + slope . x
//   sinusoidal     c + amplitude * trig(frequency * (direction . x) + phase)
//   separable-sum  c + sum_k terms[k](x)
class ScalarField {
 public:
  ScalarField() = default;

  static ScalarField constant(double value);
  static ScalarField affine(double c, Point slope);
  static ScalarField sinusoidal(double c, double amplitude, double frequency,
                                double phase = 0.0, Trig trig = Trig::sin,
                                Point direction = {1.0, 1.0});
  static ScalarField separable_sum(double c, std::vector<ScalarField> terms);

  double operator()(const Point& x) const;

  // Declared bounds when present, otherwise an analytic enclosure over `box`.
  Bounds bounds(const Box& box) const;
  Bounds analytic_bounds(const Box& box) const;

  bool is_constant() const;
  FieldPreset preset() const { return preset_; }
  FieldRegion region() const { return region_; }
  const std::optional<Bounds>& declared_bounds() const { return declared_; }

  ScalarField& with_region(FieldRegion region) {
    region_ = region;
    return *this;
  }
  ScalarField& with_declared_bounds(Bounds b) {
    declared_ = b;
    return *this;
  }
  ScalarField scaled(double factor) const;

  // Preset parameters, exposed for serialization.
  double c() const { return c_; }
  const Point& slope() const { return slope_; }
  double amplitude() const { return amplitude_; }
  double frequency() const { return frequency_; }
  double phase() const { return phase_; }
  Trig trig() const { return trig_; }
  const Point& direction() const { return direction_; }
  const std::vector<ScalarField>& terms() const { return terms_; }

 private:
  FieldPreset preset_ = FieldPreset::constant;
  FieldRegion region_ = FieldRegion::both;
  double c_ = 0.0;
  Point slope_{0.0, 0.0};
  double amplitude_ = 0.0;
  double frequency_ = 0.0;
  double phase_ = 0.0;
  Trig trig_ = Trig::sin;
  Point direction_{1.0, 1.0};
  std::vector<ScalarField> terms_;
  std::optional<Bounds> declared_;
};

// The kernel exponent p(x, y). Presets:
//   constant       c
//   affine         c + a . x + b . y + d * |x - y|     (symmetric iff a == b)
//   sinusoidal     c + amplitude * trig(frequency * (sum x + sum y) + phase)
//   separable-sum  c + left(x) + right(y)              (symmetric iff equal)
class ExponentField2 {
 public:
  ExponentField2() = default;

  static ExponentField2 constant(double value);
  static ExponentField2 affine(double c, Point a, Point b, double d = 0.0);
  static ExponentField2 sinusoidal(double c, double amplitude,
                                   double frequency, double phase = 0.0,
                                   Trig trig = Trig::sin);
  static ExponentField2 separable_sum(double c, ScalarField left,
                                      std::optional<ScalarField> right = {});

  double operator()(const Point& x, const Point& y) const;

  // p_minus / p_plus: declared when present, else an analytic enclosure of
  // p over box x box.
  Bounds bounds(const Box& box) const;
  Bounds analytic_bounds(const Box& box) const;
  bool is_constant() const { return preset_ == FieldPreset::constant; }

  FieldPreset preset() const { return preset_; }
  const std::optional<Bounds>& declared_bounds() const { return declared_; }
  ExponentField2& with_declared_bounds(Bounds b) {
    declared_ = b;
    return *this;
  }

  double c() const { return c_; }
  const Point& a() const { return a_; }
  const Point& b() const { return b_; }
  double d() const { return d_; }
  double amplitude() const { return amplitude_; }
  double frequency() const { return frequency_; }
  double phase() const { return phase_; }
  Trig trig() const { return trig_; }
  const std::vector<ScalarField>& sides() const { return sides_; }

 private:
  FieldPreset preset_ = FieldPreset::constant;
  double c_ = 2.0;
  Point a_{0.0, 0.0};
  Point b_{0.0, 0.0};
  double d_ = 0.0;
  double amplitude_ = 0.0;
  double frequency_ = 0.0;
  double phase_ = 0.0;
  Trig trig_ = Trig::sin;
  std::vector<ScalarField> sides_;  // {left, right}
  std::optional<Bounds> declared_;
};

// p(x, x).
double pbar(const ExponentField2& p, const Point& x);

// N pbar(x) / (N - s pbar(x)); throws DegenerateExponent when s pbar(x) >= N.
double critical_exponent(const ExponentField2& p, double s, int dim,
                         const Point& x);

// r / (r - 1); throws DegenerateExponent when r <= 1.
double conjugate_exponent(double r);

}  // namespace fracrobin
