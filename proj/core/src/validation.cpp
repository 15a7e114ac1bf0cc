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

#include "fracrobin/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "fracrobin/errors.hpp"
#include "fracrobin/fields.hpp"

namespace fracrobin {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::reported:
      return "reported";
  }
  return "reported";
}

bool ValidationReport::passed() const {
  return std::none_of(entries.begin(), entries.end(), [](const CheckEntry& e) {
    return e.verdict == Verdict::fail;
  });
}

const CheckEntry* ValidationReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

namespace {

constexpr int kPairSamples = 10000;
constexpr int kBoundSamples = 20000;
constexpr int kPointSamples = 20000;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Point in(const Box& b) {
    Point x{0.0, 0.0};
    for (int a = 0; a < b.dim; ++a) {
      x[a] = b.lower[a] + unit_(rng_) * b.width(a);
    }
    return x;
  }

  Point in_collar(const Box& outer, const Box& interior) {
    for (int tries = 0; tries < 1000; ++tries) {
      const Point x = in(outer);
      if (!interior.strictly_contains(x)) return x;
    }
    return outer.lower;
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

// Sampled extreme of f over a box, plus the box corners and center.
struct Extreme {
  double value;
  Point at;
};

Extreme sample_min(const std::function<double(const Point&)>& f,
                   const std::function<Point()>& draw,
                   const std::vector<Point>& extra, int n) {
  Extreme e{std::numeric_limits<double>::infinity(), {0.0, 0.0}};
  const auto visit = [&](const Point& x) {
    const double v = f(x);
    if (v < e.value || std::isnan(v)) e = {v, x};
  };
  for (const Point& x : extra) visit(x);
  for (int k = 0; k < n; ++k) visit(draw());
  return e;
}

std::vector<Point> landmarks(const Box& b) {
  std::vector<Point> pts{b.center()};
  if (b.dim == 1) {
    pts.push_back({b.lower[0], 0.0});
    pts.push_back({b.upper[0], 0.0});
  } else {
    for (double x : {b.lower[0], b.upper[0]}) {
      for (double y : {b.lower[1], b.upper[1]}) pts.push_back({x, y});
    }
  }
  return pts;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

ValidationReport validate_problem(const ProblemSpec& spec) {
  ValidationReport rep;
  auto& out = rep.entries;
  const auto add = [&](std::string name, bool ok, double witness,
                       std::optional<Point> at, std::string detail) {
    out.push_back({std::move(name), ok ? Verdict::pass : Verdict::fail,
                   witness, ok ? std::nullopt : at, std::move(detail)});
  };

  const int N = spec.dim;
  const bool dim_ok = N == 1 || N == 2;
  add("dimension", dim_ok, N, std::nullopt, "dim in {1, 2}");
  if (!dim_ok) return rep;

  add("s_range", spec.s > 0.0 && spec.s < 1.0, spec.s, std::nullopt,
      "0 < s < 1");

  const Box& inner = spec.domain.interior;
  const bool box_ok = inner.dim == N && inner.measure() > 0.0;
  add("domain", box_ok, inner.measure(), std::nullopt,
      "nondegenerate interior box");
  const double h = inner.width(0) / std::max(spec.resolution, 1);
  add("collar_radius", spec.domain.collar_radius >= h * (1 - 1e-12),
      spec.domain.collar_radius, std::nullopt, "R >= one cell width");
  add("resolution", spec.resolution >= 4, spec.resolution, std::nullopt,
      "resolution >= 4");
  if (!box_ok) return rep;

  const Box outer = spec.domain.outer();
  Sampler sampler(spec.seed * 0x9E3779B97F4A7C15ull + 17);

  // Symmetry of p.
  {
    double worst = 0.0;
    Point at{};
    for (int k = 0; k < kPairSamples; ++k) {
      const Point x = sampler.in(outer);
      const Point y = sampler.in(outer);
      const double d = std::abs(spec.p(x, y) - spec.p(y, x));
      if (d > worst || std::isnan(d)) {
        worst = d;
        at = x;
      }
    }
    add("p_symmetry", worst <= 1e-14, worst, at, "|p(x,y) - p(y,x)| <= 1e-14");
  }

  // Declared (or analytic) bounds of p against a dense sample.
  const Bounds pb = spec.p.bounds(outer);
  {
    double worst = 0.0;
    Point at{};
    for (int k = 0; k < kBoundSamples; ++k) {
      const Point x = sampler.in(outer);
      const Point y = sampler.in(outer);
      const double v = spec.p(x, y);
      const double ex = std::max(pb.min - v, v - pb.max);
      if (ex > worst || std::isnan(v)) {
        worst = std::isnan(v) ? std::numeric_limits<double>::infinity() : ex;
        at = x;
      }
    }
    add("p_bounds", worst <= 1e-12, worst, at,
        "p- = " + fmt(pb.min) + ", p+ = " + fmt(pb.max));
  }
  add("p_minus_gt_one", pb.min > 1.0, pb.min, std::nullopt, "p- > 1");
  add("sp_plus_lt_N", spec.s * pb.max < N, spec.s * pb.max, std::nullopt,
      "s p+ < N");

  const auto draw_inner = [&] { return sampler.in(inner); };
  const auto draw_collar = [&] { return sampler.in_collar(outer, inner); };
  const auto inner_marks = landmarks(inner);
  const auto outer_marks = landmarks(outer);

  {
    const auto e = sample_min(spec.beta, draw_collar, outer_marks, kPointSamples);
    add("beta_nonnegative", e.value >= 0.0, e.value, e.at,
        "beta >= 0 on the collar");
  }
  {
    const auto e = sample_min(
        [&](const Point& x) {
          return std::isfinite(spec.g(x)) ? 0.0 : -1.0;
        },
        draw_collar, outer_marks, kPointSamples);
    add("g_finite", e.value == 0.0, e.value, e.at, "g finite on the collar");
  }
  {
    const auto e = sample_min(spec.q, draw_inner, inner_marks, kPointSamples);
    add("q_gt_one", e.value > 1.0, e.value, e.at, "q > 1 on Omega");
  }
  {
    const auto e = sample_min(spec.r, draw_inner, inner_marks, kPointSamples);
    add("r_gt_one", e.value > 1.0, e.value, e.at, "r > 1 on Omega");
  }
  {
    const auto e = sample_min(
        [&](const Point& x) { return pbar(spec.p, x) - spec.q(x); },
        draw_inner, inner_marks, kPointSamples);
    add("q_lt_pbar", e.value > 0.0, e.value, e.at,
        "min of pbar - q on Omega");
  }
  {
    // 1 < r' q < p*_s, witness = the smaller of the two margins.
    const auto margin = [&](const Point& x) {
      const double r = spec.r(x);
      if (!(r > 1.0)) return -std::numeric_limits<double>::infinity();
      const double t = conjugate_exponent(r) * spec.q(x);
      double crit = std::numeric_limits<double>::infinity();
      try {
        crit = critical_exponent(spec.p, spec.s, N, x);
      } catch (const DegenerateExponent&) {
        return -std::numeric_limits<double>::infinity();
      }
      return std::min(t - 1.0, crit - t);
    };
    const auto e = sample_min(margin, draw_inner, inner_marks, kPointSamples);
    add("embedding_range", e.value > 0.0, e.value, e.at,
        "1 < r' q < p*_s on Omega");
  }

  const Box& o0 = spec.omega0;
  const bool o0_ok = o0.dim == N && o0.measure() > 0.0 && inner.contains(o0);
  add("omega0", o0_ok, o0.measure(), std::nullopt,
      "omega0 nonempty and inside Omega");
  if (o0_ok) {
    const auto e = sample_min(spec.V, [&] { return sampler.in(o0); },
                              landmarks(o0), kPointSamples);
    add("V_positive", e.value > 0.0, e.value, e.at, "V > 0 on omega0");
  }
  {
    const auto e = sample_min(
        [&](const Point& x) { return -std::abs(spec.g(x)); }, draw_collar,
        outer_marks, kPointSamples);
    add("g_zero", e.value == 0.0, -e.value, e.at, "g = 0 on the collar");
  }
  return rep;
}

}  // namespace fracrobin
