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

#include "fracrobin/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "fracrobin/errors.hpp"

namespace fracrobin {

using nlohmann::json;

namespace {

// Source text of the config being parsed, for line numbers in errors.
thread_local const std::string* g_source = nullptr;

int line_of_key(const std::string& field) {
  if (!g_source) return 0;
  const auto dot = field.find_last_of('.');
  std::string key = dot == std::string::npos ? field : field.substr(dot + 1);
  if (const auto b = key.find('['); b != std::string::npos) key.resize(b);
  const auto pos = g_source->find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  return 1 + static_cast<int>(
                 std::count(g_source->begin(), g_source->begin() + pos, '\n'));
}

[[noreturn]] void type_error(const std::string& field, const std::string& want) {
  const int line = line_of_key(field);
  std::ostringstream os;
  os << "field '" << field << "' must be " << want;
  if (line > 0) os << " (line " << line << ")";
  throw ParseError(os.str(), line, field);
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) type_error(where, "an object");
  std::vector<std::string> unknown;
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key())) unknown.push_back(item.key());
  }
  if (!unknown.empty()) {
    std::string msg = "unknown key(s) in " + (where.empty() ? "config" : where) + ":";
    for (const auto& k : unknown) msg += " \"" + k + "\"";
    throw SchemaError(msg, unknown);
  }
}

std::string join(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) type_error(field, "a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) type_error(field, "an integer");
  return j.get<int>();
}

bool boolean(const json& j, const std::string& field) {
  if (!j.is_boolean()) type_error(field, "a boolean");
  return j.get<bool>();
}

std::string text(const json& j, const std::string& field) {
  if (!j.is_string()) type_error(field, "a string");
  return j.get<std::string>();
}

double opt_number(const json& j, const std::string& key, double fallback,
                  const std::string& where) {
  return j.contains(key) ? number(j.at(key), join(where, key)) : fallback;
}

Point point(const json& j, const std::string& field) {
  Point p{0.0, 0.0};
  if (j.is_number()) {
    p[0] = j.get<double>();
    return p;
  }
  if (!j.is_array() || j.empty() || j.size() > 2) {
    type_error(field, "a number or an array of 1 or 2 numbers");
  }
  for (std::size_t a = 0; a < j.size(); ++a) {
    p[a] = number(j[a], field + "[" + std::to_string(a) + "]");
  }
  return p;
}

Trig trig(const json& j, const std::string& field) {
  const std::string t = text(j, field);
  if (t == "sin") return Trig::sin;
  if (t == "cos") return Trig::cos;
  type_error(field, "\"sin\" or \"cos\"");
}

std::string preset_of(const json& j, const std::string& where) {
  if (!j.contains("preset")) {
    throw SchemaError("missing key \"preset\" in " + where, {"preset"});
  }
  return text(j.at("preset"), join(where, "preset"));
}

std::optional<Bounds> bounds_of(const json& j, const std::string& where) {
  if (!j.contains("bounds")) return std::nullopt;
  const json& b = j.at("bounds");
  const std::string f = join(where, "bounds");
  if (!b.is_array() || b.size() != 2) type_error(f, "an array [min, max]");
  return Bounds{number(b[0], f + "[0]"), number(b[1], f + "[1]")};
}

Box box_of(const json& j, const std::string& where, int dim) {
  check_keys(j, {"lower", "upper"}, where);
  for (const char* k : {"lower", "upper"}) {
    if (!j.contains(k)) throw SchemaError("missing key \"" + std::string(k) +
                                              "\" in " + where,
                                          {k});
  }
  Box b;
  b.dim = dim;
  b.lower = point(j.at("lower"), join(where, "lower"));
  b.upper = point(j.at("upper"), join(where, "upper"));
  return b;
}

}  // namespace

ScalarField parse_scalar_field(const json& j, const std::string& where) {
  if (j.is_number()) return ScalarField::constant(j.get<double>());
  if (!j.is_object()) type_error(where, "a number or a field descriptor");
  const std::string preset = preset_of(j, where);
  ScalarField f;
  if (preset == "constant") {
    check_keys(j, {"preset", "value", "bounds", "region"}, where);
    f = ScalarField::constant(opt_number(j, "value", 0.0, where));
  } else if (preset == "affine") {
    check_keys(j, {"preset", "c", "slope", "bounds", "region"}, where);
    f = ScalarField::affine(
        opt_number(j, "c", 0.0, where),
        j.contains("slope") ? point(j.at("slope"), join(where, "slope"))
                            : Point{0.0, 0.0});
  } else if (preset == "sinusoidal") {
    check_keys(j,
               {"preset", "c", "amplitude", "frequency", "phase", "trig",
                "direction", "bounds", "region"},
               where);
    f = ScalarField::sinusoidal(
        opt_number(j, "c", 0.0, where), opt_number(j, "amplitude", 0.0, where),
        opt_number(j, "frequency", 1.0, where),
        opt_number(j, "phase", 0.0, where),
        j.contains("trig") ? trig(j.at("trig"), join(where, "trig")) : Trig::sin,
        j.contains("direction") ? point(j.at("direction"), join(where, "direction"))
                                : Point{1.0, 1.0});
  } else if (preset == "separable-sum") {
    check_keys(j, {"preset", "c", "terms", "bounds", "region"}, where);
    std::vector<ScalarField> terms;
    if (j.contains("terms")) {
      const json& t = j.at("terms");
      if (!t.is_array()) type_error(join(where, "terms"), "an array");
      for (std::size_t k = 0; k < t.size(); ++k) {
        terms.push_back(parse_scalar_field(
            t[k], join(where, "terms") + "[" + std::to_string(k) + "]"));
      }
    }
    f = ScalarField::separable_sum(opt_number(j, "c", 0.0, where),
                                   std::move(terms));
  } else {
    type_error(join(where, "preset"),
               "one of constant, affine, sinusoidal, separable-sum");
  }
  if (auto b = bounds_of(j, where)) f.with_declared_bounds(*b);
  if (j.contains("region")) {
    const std::string r = text(j.at("region"), join(where, "region"));
    if (r == "interior") {
      f.with_region(FieldRegion::interior);
    } else if (r == "collar") {
      f.with_region(FieldRegion::collar);
    } else if (r == "both") {
      f.with_region(FieldRegion::both);
    } else {
      type_error(join(where, "region"), "interior, collar or both");
    }
  }
  return f;
}

ExponentField2 parse_exponent_field(const json& j, const std::string& where) {
  if (j.is_number()) return ExponentField2::constant(j.get<double>());
  if (!j.is_object()) type_error(where, "a number or a field descriptor");
  const std::string preset = preset_of(j, where);
  ExponentField2 p;
  if (preset == "constant") {
    check_keys(j, {"preset", "value", "bounds"}, where);
    p = ExponentField2::constant(opt_number(j, "value", 2.0, where));
  } else if (preset == "affine") {
    check_keys(j, {"preset", "c", "a", "b", "d", "bounds"}, where);
    const auto vec = [&](const char* k) {
      return j.contains(k) ? point(j.at(k), join(where, k)) : Point{0.0, 0.0};
    };
    p = ExponentField2::affine(opt_number(j, "c", 2.0, where), vec("a"),
                               vec("b"), opt_number(j, "d", 0.0, where));
  } else if (preset == "sinusoidal") {
    check_keys(j, {"preset", "c", "amplitude", "frequency", "phase", "trig",
                   "bounds"},
               where);
    p = ExponentField2::sinusoidal(
        opt_number(j, "c", 2.0, where), opt_number(j, "amplitude", 0.0, where),
        opt_number(j, "frequency", 1.0, where),
        opt_number(j, "phase", 0.0, where),
        j.contains("trig") ? trig(j.at("trig"), join(where, "trig"))
                           : Trig::sin);
  } else if (preset == "separable-sum") {
    check_keys(j, {"preset", "c", "left", "right", "bounds"}, where);
    if (!j.contains("left")) {
      throw SchemaError("missing key \"left\" in " + where, {"left"});
    }
    std::optional<ScalarField> right;
    if (j.contains("right")) {
      right = parse_scalar_field(j.at("right"), join(where, "right"));
    }
    p = ExponentField2::separable_sum(
        opt_number(j, "c", 2.0, where),
        parse_scalar_field(j.at("left"), join(where, "left")), right);
  } else {
    type_error(join(where, "preset"),
               "one of constant, affine, sinusoidal, separable-sum");
  }
  if (auto b = bounds_of(j, where)) p.with_declared_bounds(*b);
  return p;
}

ProblemSpec parse_config(const std::string& source) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    const std::size_t at = std::min<std::size_t>(e.byte, source.size());
    const int line = 1 + static_cast<int>(std::count(
                             source.begin(), source.begin() + at, '\n'));
    throw ParseError("malformed JSON at line " + std::to_string(line) + ": " +
                         e.what(),
                     line, "");
  }
  struct Scope {
    explicit Scope(const std::string* s) { g_source = s; }
    ~Scope() { g_source = nullptr; }
  } scope(&source);

  check_keys(j,
             {"dim", "s", "domain", "resolution", "exponents", "coefficients",
              "p", "q", "r", "V", "beta", "g", "omega0", "lambda", "solver",
              "quadrature", "checks", "seed", "deterministic", "pair_budget"},
             "");

  std::vector<std::string> missing;
  for (const char* k : {"dim", "s"}) {
    if (!j.contains(k)) missing.push_back(k);
  }

  // Fields may sit in their section or at top level, not both.
  const auto field = [&](const char* section, const char* key) -> const json* {
    const json* found = nullptr;
    if (j.contains(section)) {
      const json& sec = j.at(section);
      if (sec.contains(key)) found = &sec.at(key);
    }
    if (j.contains(key)) {
      if (found) {
        throw SchemaError("key \"" + std::string(key) + "\" given both in " +
                              section + " and at top level",
                          {key});
      }
      found = &j.at(key);
    }
    return found;
  };
  if (j.contains("exponents")) check_keys(j.at("exponents"), {"p", "q", "r"}, "exponents");
  if (j.contains("coefficients")) {
    check_keys(j.at("coefficients"), {"V", "beta", "g"}, "coefficients");
  }
  for (auto [sec, key] : {std::pair{"exponents", "p"}, {"exponents", "q"},
                          {"exponents", "r"}, {"coefficients", "V"}}) {
    if (!field(sec, key)) missing.push_back(key);
  }
  if (!missing.empty()) {
    std::string msg = "missing key(s):";
    for (const auto& k : missing) msg += " \"" + k + "\"";
    throw SchemaError(msg, missing);
  }

  ProblemSpec spec;
  spec.dim = integer(j.at("dim"), "dim");
  spec.s = number(j.at("s"), "s");
  const int dim = spec.dim;

  spec.domain.dim = dim;
  spec.domain.interior.dim = dim;
  spec.domain.interior.lower = {0.0, 0.0};
  spec.domain.interior.upper = {1.0, dim == 2 ? 1.0 : 0.0};
  bool radius_given = false;
  if (j.contains("domain")) {
    const json& d = j.at("domain");
    check_keys(d, {"lower", "upper", "collar_radius"}, "domain");
    if (d.contains("lower")) spec.domain.interior.lower = point(d.at("lower"), "domain.lower");
    if (d.contains("upper")) spec.domain.interior.upper = point(d.at("upper"), "domain.upper");
    if (d.contains("collar_radius")) {
      spec.domain.collar_radius = number(d.at("collar_radius"), "domain.collar_radius");
      radius_given = true;
    }
  }
  if (!radius_given) spec.domain.collar_radius = spec.domain.interior.diameter();

  if (j.contains("resolution")) spec.resolution = integer(j.at("resolution"), "resolution");
  spec.p = parse_exponent_field(*field("exponents", "p"), "exponents.p");
  spec.q = parse_scalar_field(*field("exponents", "q"), "exponents.q");
  spec.r = parse_scalar_field(*field("exponents", "r"), "exponents.r");
  spec.V = parse_scalar_field(*field("coefficients", "V"), "coefficients.V");
  if (const json* b = field("coefficients", "beta")) {
    spec.beta = parse_scalar_field(*b, "coefficients.beta");
  }
  if (const json* g = field("coefficients", "g")) {
    spec.g = parse_scalar_field(*g, "coefficients.g");
  }

  spec.omega0 = j.contains("omega0") ? box_of(j.at("omega0"), "omega0", dim)
                                     : spec.domain.interior;

  if (j.contains("lambda")) {
    const json& l = j.at("lambda");
    if (l.is_string()) {
      if (l.get<std::string>() != "auto") type_error("lambda", "\"auto\" or a number");
    } else {
      spec.lambda = number(l, "lambda");
    }
  }

  if (j.contains("solver")) {
    const json& s = j.at("solver");
    check_keys(s,
               {"tol_grad", "max_iters", "armijo", "alpha_safety",
                "embedding_restarts", "embedding_ascent_steps", "rho_fraction",
                "sphere_samples", "weak_test_directions"},
               "solver");
    SolverOptions& o = spec.solver;
    o.tol_grad = opt_number(s, "tol_grad", o.tol_grad, "solver");
    o.armijo = opt_number(s, "armijo", o.armijo, "solver");
    o.alpha_safety = opt_number(s, "alpha_safety", o.alpha_safety, "solver");
    o.rho_fraction = opt_number(s, "rho_fraction", o.rho_fraction, "solver");
    if (s.contains("max_iters")) o.max_iters = integer(s.at("max_iters"), "solver.max_iters");
    if (s.contains("embedding_restarts")) {
      o.embedding_restarts = integer(s.at("embedding_restarts"), "solver.embedding_restarts");
    }
    if (s.contains("embedding_ascent_steps")) {
      o.embedding_ascent_steps =
          integer(s.at("embedding_ascent_steps"), "solver.embedding_ascent_steps");
    }
    if (s.contains("sphere_samples")) {
      o.sphere_samples = integer(s.at("sphere_samples"), "solver.sphere_samples");
    }
    if (s.contains("weak_test_directions")) {
      o.weak_test_directions =
          integer(s.at("weak_test_directions"), "solver.weak_test_directions");
    }
  }

  spec.quadrature = QuadratureOptions::defaults_for(dim);
  if (j.contains("quadrature")) {
    const json& q = j.at("quadrature");
    check_keys(q, {"gauss_points", "grading_levels", "near_distance"}, "quadrature");
    if (q.contains("gauss_points")) {
      spec.quadrature.gauss_points = integer(q.at("gauss_points"), "quadrature.gauss_points");
    }
    if (q.contains("grading_levels")) {
      spec.quadrature.grading_levels =
          integer(q.at("grading_levels"), "quadrature.grading_levels");
    }
    if (q.contains("near_distance")) {
      spec.quadrature.near_distance = integer(q.at("near_distance"), "quadrature.near_distance");
    }
  }

  if (j.contains("checks")) {
    const json& c = j.at("checks");
    check_keys(c,
               {"resolutions", "resolution", "coercivity_scales",
                "monotonicity_samples", "modular_samples", "gradient_samples"},
               "checks");
    CheckOptions& o = spec.checks;
    if (c.contains("resolutions")) {
      const json& r = c.at("resolutions");
      if (!r.is_array()) type_error("checks.resolutions", "an array of integers");
      o.resolutions.clear();
      for (std::size_t k = 0; k < r.size(); ++k) {
        o.resolutions.push_back(integer(r[k], "checks.resolutions"));
      }
    }
    if (c.contains("coercivity_scales")) {
      const json& r = c.at("coercivity_scales");
      if (!r.is_array()) type_error("checks.coercivity_scales", "an array of numbers");
      o.coercivity_scales.clear();
      for (std::size_t k = 0; k < r.size(); ++k) {
        o.coercivity_scales.push_back(number(r[k], "checks.coercivity_scales"));
      }
    }
    if (c.contains("resolution")) o.resolution = integer(c.at("resolution"), "checks.resolution");
    if (c.contains("monotonicity_samples")) {
      o.monotonicity_samples =
          integer(c.at("monotonicity_samples"), "checks.monotonicity_samples");
    }
    if (c.contains("modular_samples")) {
      o.modular_samples = integer(c.at("modular_samples"), "checks.modular_samples");
    }
    if (c.contains("gradient_samples")) {
      o.gradient_samples = integer(c.at("gradient_samples"), "checks.gradient_samples");
    }
  }

  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_unsigned()) type_error("seed", "a nonnegative integer");
    spec.seed = s.get<std::uint64_t>();
  }
  if (j.contains("deterministic")) {
    spec.deterministic = boolean(j.at("deterministic"), "deterministic");
  }
  if (j.contains("pair_budget")) {
    const json& b = j.at("pair_budget");
    if (!b.is_number_unsigned()) type_error("pair_budget", "a positive integer");
    spec.pair_budget = b.get<std::size_t>();
  }
  return spec;
}

ProblemSpec load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path.string(), 0, "");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

json point_json(const Point& p, int dim) {
  if (dim == 1) return json::array({p[0]});
  return json::array({p[0], p[1]});
}

void put_bounds(json& j, const std::optional<Bounds>& b) {
  if (b) j["bounds"] = json::array({b->min, b->max});
}

}  // namespace

json to_json(const ScalarField& f) {
  json j;
  j["preset"] = to_string(f.preset());
  switch (f.preset()) {
    case FieldPreset::constant:
      j["value"] = f.c();
      break;
    case FieldPreset::affine:
      j["c"] = f.c();
      j["slope"] = point_json(f.slope(), 2);
      break;
    case FieldPreset::sinusoidal:
      j["c"] = f.c();
      j["amplitude"] = f.amplitude();
      j["frequency"] = f.frequency();
      j["phase"] = f.phase();
      j["trig"] = f.trig() == Trig::sin ? "sin" : "cos";
      j["direction"] = point_json(f.direction(), 2);
      break;
    case FieldPreset::separable_sum: {
      j["c"] = f.c();
      json terms = json::array();
      for (const auto& t : f.terms()) terms.push_back(to_json(t));
      j["terms"] = terms;
      break;
    }
  }
  if (f.region() != FieldRegion::both) j["region"] = to_string(f.region());
  put_bounds(j, f.declared_bounds());
  return j;
}

json to_json(const ExponentField2& f) {
  json j;
  j["preset"] = to_string(f.preset());
  switch (f.preset()) {
    case FieldPreset::constant:
      j["value"] = f.c();
      break;
    case FieldPreset::affine:
      j["c"] = f.c();
      j["a"] = point_json(f.a(), 2);
      j["b"] = point_json(f.b(), 2);
      j["d"] = f.d();
      break;
    case FieldPreset::sinusoidal:
      j["c"] = f.c();
      j["amplitude"] = f.amplitude();
      j["frequency"] = f.frequency();
      j["phase"] = f.phase();
      j["trig"] = f.trig() == Trig::sin ? "sin" : "cos";
      break;
    case FieldPreset::separable_sum:
      j["c"] = f.c();
      j["left"] = to_json(f.sides().at(0));
      j["right"] = to_json(f.sides().at(1));
      break;
  }
  put_bounds(j, f.declared_bounds());
  return j;
}

json to_json(const Box& b) {
  return {{"lower", point_json(b.lower, b.dim)},
          {"upper", point_json(b.upper, b.dim)}};
}

json to_json(const ProblemSpec& spec) {
  json j;
  j["dim"] = spec.dim;
  j["s"] = spec.s;
  j["domain"] = to_json(spec.domain.interior);
  j["domain"]["collar_radius"] = spec.domain.collar_radius;
  j["resolution"] = spec.resolution;
  j["exponents"] = {{"p", to_json(spec.p)}, {"q", to_json(spec.q)},
                    {"r", to_json(spec.r)}};
  j["coefficients"] = {{"V", to_json(spec.V)}, {"beta", to_json(spec.beta)},
                       {"g", to_json(spec.g)}};
  j["omega0"] = to_json(spec.omega0);
  j["lambda"] = spec.lambda ? json(*spec.lambda) : json("auto");
  const SolverOptions& o = spec.solver;
  j["solver"] = {{"tol_grad", o.tol_grad},
                 {"max_iters", o.max_iters},
                 {"armijo", o.armijo},
                 {"alpha_safety", o.alpha_safety},
                 {"embedding_restarts", o.embedding_restarts},
                 {"embedding_ascent_steps", o.embedding_ascent_steps},
                 {"rho_fraction", o.rho_fraction},
                 {"sphere_samples", o.sphere_samples},
                 {"weak_test_directions", o.weak_test_directions}};
  j["quadrature"] = {{"gauss_points", spec.quadrature.gauss_points},
                     {"grading_levels", spec.quadrature.grading_levels},
                     {"near_distance", spec.quadrature.near_distance}};
  const CheckOptions& c = spec.checks;
  j["checks"] = {{"resolutions", c.resolutions},
                 {"resolution", c.resolution},
                 {"coercivity_scales", c.coercivity_scales},
                 {"monotonicity_samples", c.monotonicity_samples},
                 {"modular_samples", c.modular_samples},
                 {"gradient_samples", c.gradient_samples}};
  j["seed"] = spec.seed;
  j["deterministic"] = spec.deterministic;
  j["pair_budget"] = spec.pair_budget;
  return j;
}

ProblemSpec preset_1d() {
  ProblemSpec spec;
  spec.dim = 1;
  spec.s = 0.4;
  spec.domain.dim = 1;
  spec.domain.interior = Box{1, {0.0, 0.0}, {1.0, 0.0}};
  spec.domain.collar_radius = 1.0;
  spec.resolution = 64;
  spec.p = ExponentField2::constant(2.0);
  spec.q = ScalarField::constant(1.5);
  spec.r = ScalarField::constant(4.0);
  spec.V = ScalarField::constant(1.0);
  spec.beta = ScalarField::constant(0.0);
  spec.g = ScalarField::constant(0.0);
  spec.omega0 = Box{1, {0.25, 0.0}, {0.75, 0.0}};
  spec.quadrature = QuadratureOptions::defaults_for(1);
  return spec;
}

}  // namespace fracrobin
