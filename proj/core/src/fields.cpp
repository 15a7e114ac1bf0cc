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

#include "fracrobin/fields.hpp"

#include <algorithm>
#include <cmath>

#include "fracrobin/errors.hpp"

namespace fracrobin {

namespace {

double trig_eval(Trig t, double arg) {
  return t == Trig::sin ? std::sin(arg) : std::cos(arg);
}

// min and max of slope . x over the box corners.
Bounds linear_bounds(const Point& slope, const Box& box) {
  Bounds b{0.0, 0.0};
  for (int a = 0; a < box.dim; ++a) {
    const double lo = slope[a] * box.lower[a];
    const double hi = slope[a] * box.upper[a];
    b.min += std::min(lo, hi);
    b.max += std::max(lo, hi);
  }
  return b;
}

}  // namespace

std::string to_string(FieldPreset preset) {
  switch (preset) {
    case FieldPreset::constant:
      return "constant";
    case FieldPreset::affine:
      return "affine";
    case FieldPreset::sinusoidal:
      return "sinusoidal";
    case FieldPreset::separable_sum:
      return "separable-sum";
  }
  return "unknown";
}

std::string to_string(FieldRegion region) {
  switch (region) {
    case FieldRegion::interior:
      return "interior";
    case FieldRegion::collar:
      return "collar";
    case FieldRegion::both:
      return "both";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// ScalarField

ScalarField ScalarField::constant(double value) {
  ScalarField f;
  f.preset_ = FieldPreset::constant;
  f.c_ = value;
  return f;
}

ScalarField ScalarField::affine(double c, Point slope) {
  ScalarField f;
  f.preset_ = FieldPreset::affine;
  f.c_ = c;
  f.slope_ = slope;
  return f;
}

ScalarField ScalarField::sinusoidal(double c, double amplitude,
                                    double frequency, double phase, Trig trig,
                                    Point direction) {
  ScalarField f;
  f.preset_ = FieldPreset::sinusoidal;
  f.c_ = c;
  f.amplitude_ = amplitude;
  f.frequency_ = frequency;
  f.phase_ = phase;
  f.trig_ = trig;
  f.direction_ = direction;
  return f;
}

ScalarField ScalarField::separable_sum(double c,
                                       std::vector<ScalarField> terms) {
  ScalarField f;
  f.preset_ = FieldPreset::separable_sum;
  f.c_ = c;
  f.terms_ = std::move(terms);
  return f;
}

double ScalarField::operator()(const Point& x) const {
  switch (preset_) {
    case FieldPreset::constant:
      return c_;
    case FieldPreset::affine:
      return c_ + slope_[0] * x[0] + slope_[1] * x[1];
    case FieldPreset::sinusoidal:
      return c_ + amplitude_ * trig_eval(trig_,
                                         frequency_ * (direction_[0] * x[0] +
                                                       direction_[1] * x[1]) +
                                             phase_);
    case FieldPreset::separable_sum: {
      double v = c_;
      for (const auto& t : terms_) v += t(x);
      return v;
    }
  }
  return c_;
}

Bounds ScalarField::analytic_bounds(const Box& box) const {
  switch (preset_) {
    case FieldPreset::constant:
      return {c_, c_};
    case FieldPreset::affine: {
      Bounds b = linear_bounds(slope_, box);
      return {c_ + b.min, c_ + b.max};
    }
    case FieldPreset::sinusoidal: {
      const double a = std::abs(amplitude_);
      return {c_ - a, c_ + a};
    }
    case FieldPreset::separable_sum: {
      Bounds b{c_, c_};
      for (const auto& t : terms_) {
        const Bounds tb = t.analytic_bounds(box);
        b.min += tb.min;
        b.max += tb.max;
      }
      return b;
    }
  }
  return {c_, c_};
}

Bounds ScalarField::bounds(const Box& box) const {
  return declared_ ? *declared_ : analytic_bounds(box);
}

bool ScalarField::is_constant() const {
  switch (preset_) {
    case FieldPreset::constant:
      return true;
    case FieldPreset::affine:
      return slope_[0] == 0.0 && slope_[1] == 0.0;
    case FieldPreset::sinusoidal:
      return amplitude_ == 0.0;
    case FieldPreset::separable_sum:
      return std::all_of(terms_.begin(), terms_.end(),
                         [](const ScalarField& t) { return t.is_constant(); });
  }
  return false;
}

ScalarField ScalarField::scaled(double factor) const {
  ScalarField f = *this;
  f.c_ *= factor;
  f.slope_ = {slope_[0] * factor, slope_[1] * factor};
  f.amplitude_ *= factor;
  for (auto& t : f.terms_) t = t.scaled(factor);
  if (f.declared_) {
    const double lo = f.declared_->min * factor;
    const double hi = f.declared_->max * factor;
    f.declared_ = Bounds{std::min(lo, hi), std::max(lo, hi)};
  }
  return f;
}

// ---------------------------------------------------------------------------
// ExponentField2

ExponentField2 ExponentField2::constant(double value) {
  ExponentField2 p;
  p.preset_ = FieldPreset::constant;
  p.c_ = value;
  return p;
}

ExponentField2 ExponentField2::affine(double c, Point a, Point b, double d) {
  ExponentField2 p;
  p.preset_ = FieldPreset::affine;
  p.c_ = c;
  p.a_ = a;
  p.b_ = b;
  p.d_ = d;
  return p;
}

ExponentField2 ExponentField2::sinusoidal(double c, double amplitude,
                                          double frequency, double phase,
                                          Trig trig) {
  ExponentField2 p;
  p.preset_ = FieldPreset::sinusoidal;
  p.c_ = c;
  p.amplitude_ = amplitude;
  p.frequency_ = frequency;
  p.phase_ = phase;
  p.trig_ = trig;
  return p;
}

ExponentField2 ExponentField2::separable_sum(double c, ScalarField left,
                                             std::optional<ScalarField> right) {
  ExponentField2 p;
  p.preset_ = FieldPreset::separable_sum;
  p.c_ = c;
  ScalarField r = right ? *right : left;
  p.sides_ = {std::move(left), std::move(r)};
  return p;
}

double ExponentField2::operator()(const Point& x, const Point& y) const {
  switch (preset_) {
    case FieldPreset::constant:
      return c_;
    case FieldPreset::affine:
      return c_ + a_[0] * x[0] + a_[1] * x[1] + b_[0] * y[0] + b_[1] * y[1] +
             d_ * distance(x, y);
    case FieldPreset::sinusoidal:
      // (sum x) + (sum y) is evaluated symmetrically so that p(x, y) and
      // p(y, x) round identically.
      return c_ + amplitude_ * trig_eval(trig_, frequency_ * (coordinate_sum(x) +
                                                              coordinate_sum(y)) +
                                                    phase_);
    case FieldPreset::separable_sum:
      return c_ + sides_[0](x) + sides_[1](y);
  }
  return c_;
}

Bounds ExponentField2::analytic_bounds(const Box& box) const {
  switch (preset_) {
    case FieldPreset::constant:
      return {c_, c_};
    case FieldPreset::affine: {
      const Bounds la = linear_bounds(a_, box);
      const Bounds lb = linear_bounds(b_, box);
      const double spread = d_ * box.diameter();
      return {c_ + la.min + lb.min + std::min(0.0, spread),
              c_ + la.max + lb.max + std::max(0.0, spread)};
    }
    case FieldPreset::sinusoidal: {
      const double a = std::abs(amplitude_);
      return {c_ - a, c_ + a};
    }
    case FieldPreset::separable_sum: {
      const Bounds l = sides_[0].analytic_bounds(box);
      const Bounds r = sides_[1].analytic_bounds(box);
      return {c_ + l.min + r.min, c_ + l.max + r.max};
    }
  }
  return {c_, c_};
}

Bounds ExponentField2::bounds(const Box& box) const {
  return declared_ ? *declared_ : analytic_bounds(box);
}

// ---------------------------------------------------------------------------

double pbar(const ExponentField2& p, const Point& x) { return p(x, x); }

double critical_exponent(const ExponentField2& p, double s, int dim,
                         const Point& x) {
  const double pd = pbar(p, x);
  const double denom = dim - s * pd;
  if (!(denom > 0.0)) {
    throw DegenerateExponent("s * pbar(x) = " + std::to_string(s * pd) +
                             " is not below N = " + std::to_string(dim));
  }
  return dim * pd / denom;
}

double conjugate_exponent(double r) {
  if (!(r > 1.0)) {
    throw DegenerateExponent("conjugate exponent needs r > 1, got " +
                             std::to_string(r));
  }
  return r / (r - 1.0);
}

}  // namespace fracrobin
