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

#include "fracrobin/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "fracrobin/config.hpp"
#include "fracrobin/discrete_problem.hpp"
#include "fracrobin/errors.hpp"
#include "fracrobin/invariants.hpp"
#include "fracrobin/modular.hpp"
#include "fracrobin/operators.hpp"
#include "fracrobin/solver.hpp"

#ifndef FRACROBIN_VERSION
#define FRACROBIN_VERSION "0.0.0"
#endif

namespace fracrobin {

using nlohmann::json;

std::string to_string(Stage s) {
  switch (s) {
    case Stage::validate:
      return "validate";
    case Stage::check:
      return "check";
    case Stage::solve:
      return "solve";
  }
  return "validate";
}

Stage parse_stage(const std::string& name) {
  if (name == "validate") return Stage::validate;
  if (name == "check") return Stage::check;
  if (name == "solve") return Stage::solve;
  throw InvalidArgument("unknown stage: " + name);
}

bool DiagnosticsReport::any_fail() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](const CheckEntry& e) {
    return e.verdict == Verdict::fail;
  });
}

json DiagnosticsReport::full() const {
  json j = body;
  j["runtime"] = runtime;
  return j;
}

json to_json(const CheckEntry& e) {
  json j{{"name", e.name},
         {"verdict", to_string(e.verdict)},
         {"witness", std::isfinite(e.witness) ? json(e.witness) : json(nullptr)},
         {"detail", e.detail}};
  if (e.point) j["point"] = json::array({(*e.point)[0], (*e.point)[1]});
  return j;
}

namespace {

using Clock = std::chrono::steady_clock;

Verdict ok(bool b) { return b ? Verdict::pass : Verdict::fail; }

json residual_json(const IdentityResidual& r) {
  json trace = json::array();
  for (const auto& [n, a] : r.refinement_trace) trace.push_back({n, a});
  return {{"lhs", r.lhs},
          {"rhs", r.rhs},
          {"abs_residual", r.abs_residual},
          {"rel_residual", r.rel_residual},
          {"observed_order", r.observed_order},
          {"converged", r.converged},
          {"refinement_trace", trace}};
}

json norm_json(const NormBreakdown& b) {
  return {{"seminorm", b.seminorm},
          {"interior", b.interior_lebesgue},
          {"g_term", b.g_weighted},
          {"beta_term", b.beta_weighted},
          {"total", b.total}};
}

std::vector<int> identity_resolutions(const ProblemSpec& spec) {
  if (!spec.checks.resolutions.empty()) return spec.checks.resolutions;
  if (spec.dim == 1) return {32, 64, 128};
  return {8, 16};
}

int check_resolution(const ProblemSpec& spec) {
  if (spec.checks.resolution > 0) return spec.checks.resolution;
  return std::min(32, spec.resolution);
}

Box shrunk(const Box& b, double fraction) {
  Box s = b;
  for (int a = 0; a < b.dim; ++a) {
    const double w = b.width(a);
    s.lower[a] += fraction * w;
    s.upper[a] -= fraction * w;
  }
  return s;
}

class Recorder {
 public:
  explicit Recorder(DiagnosticsReport& rep) : rep_(rep) {}

  json add(const std::string& stage, std::string name, Verdict v,
           double witness, std::string detail,
           std::optional<Point> at = std::nullopt) {
    CheckEntry e{stage + "." + name, v, witness, at, std::move(detail)};
    rep_.verdicts.push_back(e);
    return to_json(e);
  }

 private:
  DiagnosticsReport& rep_;
};

json run_check(const ProblemSpec& spec, Recorder& rec) {
  json out;
  json verdicts = json::array();
  const std::uint64_t seed = spec.seed;
  const CheckOptions& co = spec.checks;
  const DiscreteProblem problem(spec, check_resolution(spec));
  out["resolution"] = problem.resolution();

  {
    json suites = json::array();
    const auto presets = lebesgue_presets();
    for (std::size_t k = 0; k < presets.size(); ++k) {
      const auto s = lebesgue_suite(problem.mesh(), presets[k],
                                    2 * co.modular_samples, seed + 11 * k);
      suites.push_back({{"preset", to_json(presets[k])},
                        {"samples", s.samples},
                        {"unit_deviation", s.unit_dev},
                        {"worst_above_one", s.worst_above},
                        {"worst_below_one", s.worst_below}});
      verdicts.push_back(rec.add(
          "check", "lebesgue_norm_modular_" + std::to_string(k), ok(s.passed),
          std::max({s.unit_dev, s.worst_above, s.worst_below}),
          "unit ball and |u|^{p-+} bounds on rho, tolerance 1e-8"));
    }
    out["lebesgue"] = suites;
  }
  {
    const auto s = x_modular_suite(problem, co.modular_samples, seed + 101);
    out["x_modular"] = {{"samples", s.samples},
                        {"unit_deviation", s.unit_dev},
                        {"hard_failures", s.hard_failures},
                        {"x_norm_violations", s.x_violations},
                        {"x_norm_violations_beyond_2tol", s.x_violations_beyond_2tol},
                        {"x_norm_worst", s.x_worst}};
    verdicts.push_back(rec.add("check", "x_modular_equivalent_norm", ok(s.passed),
                               s.hard_failures,
                               "modular against its own Luxemburg norm"));
    verdicts.push_back(rec.add("check", "x_modular_four_term_norm",
                               Verdict::reported, s.x_worst,
                               std::to_string(s.x_violations) +
                                   " violations against the four-term X-norm"));
  }
  {
    const auto ax = norm_axioms(problem, co.modular_samples, seed + 202);
    out["norm_axioms"] = {{"pairs", ax.pairs},
                          {"worst_homogeneity", ax.worst_homogeneity},
                          {"worst_triangle", ax.worst_triangle}};
    verdicts.push_back(rec.add("check", "norm_axioms", ok(ax.passed),
                               std::max(ax.worst_homogeneity, ax.worst_triangle),
                               "homogeneity and triangle inequality, 1e-9"));
    const CheckEntry conv = norm_modular_convergence(problem, seed + 303);
    verdicts.push_back(rec.add("check", conv.name, conv.verdict, conv.witness,
                               conv.detail));
  }
  {
    const auto res = identity_resolutions(spec);
    const AnalyticFunction bump = bump_function(shrunk(spec.domain.interior, 0.15));
    const IdentityResidual div = divergence_check(bump, spec, res);
    out["divergence"] = residual_json(div);
    verdicts.push_back(rec.add("check", "divergence",
                               ok(div.rel_residual <= 5e-2 && div.converged),
                               div.rel_residual,
                               "relative residual <= 5e-2, order >= 0.5"));

    const AnalyticFunction u = smooth_profile(0.3, 1.0, 2.1);
    const AnalyticFunction v = smooth_profile(-0.2, 0.8, 1.3);
    const IdentityResidual green = green_check(u, v, spec, res);
    out["green"] = residual_json(green);
    verdicts.push_back(rec.add("check", "green", ok(green.rel_residual <= 5e-2),
                               green.rel_residual, "relative residual <= 5e-2"));

    // Constant v reduces Green's identity to the divergence identity.
    const double c = 1.75;
    const std::vector<int> last{res.back()};
    const IdentityResidual gc = green_check(
        u, [c](const Point&) { return c; }, spec, last);
    const IdentityResidual dc = divergence_check(u, spec, last);
    const double gap = std::abs(gc.rhs - c * (dc.lhs - dc.rhs));
    out["green_reduction"] = {{"green_rhs", gc.rhs},
                              {"scaled_divergence", c * (dc.lhs - dc.rhs)},
                              {"green_lhs", gc.lhs},
                              {"gap", gap}};
    verdicts.push_back(rec.add("check", "green_reduction", ok(gap <= 1e-10), gap,
                               "constant v against the divergence check"));
  }
  {
    const GridFunction u = random_grid_function(problem, seed + 404);
    const auto a = interior_antisymmetry_check(u, spec.p, spec.s, spec.quadrature);
    out["antisymmetry"] = {{"sum", a.sum}, {"abs_sum", a.abs_sum}};
    verdicts.push_back(rec.add("check", "interior_antisymmetry", ok(a.passed),
                               a.abs_sum > 0 ? std::abs(a.sum) / a.abs_sum : 0.0,
                               "|sum| <= 1e-10 sum |terms|"));
  }
  {
    const auto m = scalar_monotonicity_check(co.monotonicity_samples, seed + 505);
    out["scalar_monotonicity"] = {{"samples", m.samples},
                                  {"violations", m.monotone_violations},
                                  {"min_value", m.min_monotone},
                                  {"simon_samples", m.simon_samples},
                                  {"simon_violations", m.simon_violations}};
    verdicts.push_back(rec.add("check", "scalar_monotonicity", ok(m.passed),
                               m.monotone_violations,
                               "(phi(a) - phi(b))(a - b) >= 0"));
    verdicts.push_back(rec.add("check", "simon_inequality", Verdict::reported,
                               m.simon_violations,
                               "|a-b|^p <= 2^p (phi(a) - phi(b))(a - b), p >= 2"));
  }
  {
    const CheckEntry fm = form_monotonicity(problem, co.modular_samples, seed + 606);
    verdicts.push_back(rec.add("check", fm.name, fm.verdict, fm.witness, fm.detail));
    const double lambda = spec.lambda.value_or(1.0);
    const auto gc = gradient_consistency(problem, lambda, co.gradient_samples,
                                         seed + 707);
    out["gradient"] = {{"samples", gc.samples}, {"worst_rel", gc.worst_rel},
                       {"lambda", lambda}};
    verdicts.push_back(rec.add("check", "gradient_consistency", ok(gc.passed),
                               gc.worst_rel, "central differences, 1e-5 relative"));
  }
  {
    const auto cr = coercivity_check(problem, co.coercivity_scales, seed + 808);
    out["coercivity"] = {{"scales", cr.scales},
                         {"ratios", cr.ratios},
                         {"x_bounds", cr.x_bounds},
                         {"equivalent_ratios", cr.eq_ratios},
                         {"equivalent_bounds", cr.eq_bounds}};
    verdicts.push_back(rec.add("check", "coercivity_monotone", ok(cr.monotone),
                               cr.ratios.empty() ? 0.0 : cr.ratios.back(),
                               "<rho'(cu), cu> / |cu|_X nondecreasing"));
    verdicts.push_back(rec.add("check", "coercivity_bound", ok(cr.bound_holds),
                               cr.eq_ratios.empty() ? 0.0 : cr.eq_ratios.back(),
                               "ratio >= |cu|^{p- - 1} in the modular's norm"));
    verdicts.push_back(rec.add("check", "coercivity_bound_x_norm",
                               Verdict::reported, cr.x_bound_holds ? 1.0 : 0.0,
                               "ratio >= |cu|_X^{p- - 1} with the four-term norm"));
    verdicts.push_back(rec.add("check", "pairing_dominates_modular",
                               ok(cr.pairing_dominates), 0.0,
                               "<rho'(u), u> >= rho(u)"));
  }
  out["verdicts"] = verdicts;
  return out;
}

struct SolveArtifacts {
  std::optional<DiscreteProblem> problem;
  std::optional<SolveResult> result;
  std::optional<MountainReport> mountain;
};

json run_solve(const ProblemSpec& spec, Recorder& rec, SolveArtifacts& art) {
  json out;
  json verdicts = json::array();
  const SolverOptions& so = spec.solver;
  art.problem.emplace(spec);
  const DiscreteProblem& problem = *art.problem;

  const auto emb =
      estimate_embedding_constant(problem, so.embedding_restarts, spec.seed);
  out["embedding"] = {{"ratio", emb.ratio},
                      {"ratio_at_one", emb.ratio_at_one},
                      {"per_restart", emb.per_restart},
                      {"safety_factor", so.alpha_safety},
                      {"alpha", emb.alpha}};
  verdicts.push_back(rec.add("solve", "embedding_constant", Verdict::reported,
                             emb.alpha,
                             "sampled lower bound times the safety factor; "
                             "lambda* built on it is heuristic"));

  const ExistenceRegime reg = existence_regime(problem, emb.alpha, spec.lambda);
  out["regime"] = {{"alpha", reg.alpha},
                   {"lambda_star", reg.lambda_star},
                   {"rho_ball", reg.rho_ball},
                   {"sphere_bound_a", reg.sphere_bound_a},
                   {"sphere_bound_chain", reg.sphere_bound_chain},
                   {"lambda", reg.lambda},
                   {"lambda_auto", reg.lambda_auto},
                   {"q_minus", reg.q_minus},
                   {"p_plus", reg.p_plus},
                   {"V_norm", reg.V_norm},
                   {"lambda_out_of_range", reg.lambda_out_of_range},
                   {"alpha_heuristic", reg.alpha_heuristic}};
  verdicts.push_back(rec.add("solve", "lambda_in_range",
                             reg.lambda_out_of_range ? Verdict::reported
                                                     : Verdict::pass,
                             reg.lambda / reg.lambda_star, "lambda / lambda*"));

  MountainReport mg =
      mountain_geometry_check(problem, reg, so.sphere_samples, spec.seed + 1);
  json ray = json::array();
  for (const auto& r : mg.ray) ray.push_back({{"t", r.t}, {"energy", r.energy}, {"norm", r.norm}});
  out["mountain"] = {{"sphere_min", mg.sphere_min},
                     {"sphere_norm_deviation", mg.sphere_norm_dev},
                     {"sphere_samples", mg.sphere.size()},
                     {"ray", ray},
                     {"listed_ray_points", mg.listed_ray_points},
                     {"best_t", mg.best_t}};
  verdicts.push_back(rec.add("solve", "sphere_positive", ok(mg.sphere_positive),
                             mg.sphere_min, "min of I over the sphere sample"));
  verdicts.push_back(rec.add("solve", "sphere_rescale",
                             ok(mg.sphere_norm_dev <= 1e-6), mg.sphere_norm_dev,
                             "|w|_X within 1e-6 of rho"));
  verdicts.push_back(rec.add("solve", "sphere_above_a", Verdict::reported,
                             mg.sphere_min - reg.sphere_bound_a,
                             "sphere minimum minus a"));
  const bool lambda_positive = reg.lambda > 0.0;
  verdicts.push_back(rec.add(
      "solve", "ray_negative",
      lambda_positive ? ok(mg.ray_negative) : Verdict::reported,
      mg.ray.back().energy,
      "I(t phi) at t = 2^-" +
          std::to_string(static_cast<int>(std::lround(-std::log2(mg.ray.back().t))))));
  verdicts.push_back(rec.add("solve", "ray_negative_listed_points",
                             Verdict::reported,
                             mg.ray[mg.listed_ray_points - 1].energy,
                             "I(t phi) at t = 2^-10"));

  SolveOptions opts;
  opts.tol_grad = so.tol_grad;
  opts.max_iters = so.max_iters;
  opts.armijo = so.armijo;
  opts.weak_test_directions = so.weak_test_directions;
  opts.seed = spec.seed + 2;
  const SolveResult res = minimize(problem, reg, mg.phi * mg.best_t, opts);
  bool trace_monotone = true;
  for (std::size_t k = 1; k < res.energy_trace.size(); ++k) {
    if (res.energy_trace[k] > res.energy_trace[k - 1]) trace_monotone = false;
  }
  out["result"] = {{"energy", res.energy},
                   {"gradient_norm", res.gradient_norm},
                   {"weak_residual", res.weak_residual},
                   {"boundary_residual", res.boundary_residual},
                   {"iterations", res.iterations},
                   {"converged", res.converged},
                   {"line_search_failed", res.line_search_failed},
                   {"projections", res.projections},
                   {"strictly_interior", res.strictly_interior},
                   {"norm", norm_json(res.norm)},
                   {"equivalent_norm", equivalent_norm(res.u_lambda, problem)}};
  verdicts.push_back(rec.add("solve", "converged", ok(res.converged),
                             res.gradient_norm, "Euclidean gradient <= tol_grad"));
  verdicts.push_back(rec.add("solve", "energy_negative",
                             lambda_positive ? ok(res.energy < 0.0)
                                             : Verdict::reported,
                             res.energy, "I(u_lambda) < 0"));
  verdicts.push_back(rec.add("solve", "nontrivial",
                             lambda_positive ? ok(res.norm.total > 0.0)
                                             : Verdict::reported,
                             res.norm.total, "|u_lambda|_X"));
  verdicts.push_back(rec.add("solve", "weak_residual",
                             ok(res.weak_residual <= 1e-6), res.weak_residual,
                             "<= 1e-6"));
  verdicts.push_back(rec.add("solve", "boundary_residual",
                             ok(res.boundary_residual <= 1e-5),
                             res.boundary_residual, "<= 1e-5"));
  verdicts.push_back(rec.add("solve", "strictly_interior",
                             ok(res.strictly_interior),
                             res.norm.total / reg.rho_ball, "|u_lambda|_X / rho"));
  verdicts.push_back(rec.add("solve", "energy_trace_monotone",
                             ok(trace_monotone), res.energy_trace.size(),
                             "nonincreasing over accepted steps"));

  const BoundaryIdentity bi = boundary_identity_check(res.u_lambda, problem);
  out["boundary_identity"] = {{"nodes", bi.nodes.size()}, {"sup", bi.sup}};
  verdicts.push_back(rec.add("solve", "boundary_identity", ok(bi.sup <= 1e-5),
                             bi.sup, "sup of N u + beta phi(u) - g"));

  // Truncation: the seminorm of the ray profile with the collar doubled.
  try {
    ProblemSpec wide = spec;
    wide.domain.collar_radius *= 2.0;
    const auto mesh = build_mesh(wide.domain, spec.resolution, spec.pair_budget);
    const GridFunction phi2 = interpolate(plateau_bump(spec.omega0), mesh);
    const PairKernel k2 = build_pair_kernel(*mesh, wide.p, wide.s, wide.quadrature);
    const double s1 = gagliardo_seminorm(mg.phi, problem.kernel());
    const double s2 = gagliardo_seminorm(phi2, k2);
    out["truncation"] = {{"seminorm", s1}, {"seminorm_doubled_collar", s2},
                         {"relative_change", std::abs(s2 - s1) / s1}};
    verdicts.push_back(rec.add("solve", "collar_doubling", Verdict::reported,
                               std::abs(s2 - s1) / s1,
                               "relative change of [phi] when R doubles"));
  } catch (const MeshTooLarge&) {
    verdicts.push_back(rec.add("solve", "collar_doubling", Verdict::reported,
                               NAN, "doubled collar exceeds the pair budget"));
  }

  out["verdicts"] = verdicts;
  art.result = res;
  art.mountain = std::move(mg);
  return out;
}

void write_csv_outputs(const std::filesystem::path& dir,
                       const SolveArtifacts& art) {
  const Mesh& mesh = art.problem->mesh();
  const SolveResult& res = *art.result;
  {
    std::ofstream f(dir / "solution.csv");
    f << std::setprecision(17);
    f << (mesh.dim() == 1 ? "cell_index,x,region,value\n"
                          : "cell_index,x,y,region,value\n");
    for (std::size_t k = 0; k < mesh.size(); ++k) {
      const Cell& c = mesh.cell(k);
      f << k << ',' << c.center[0] << ',';
      if (mesh.dim() == 2) f << c.center[1] << ',';
      f << (c.region == Region::interior ? "interior" : "collar") << ','
        << res.u_lambda[k] << '\n';
    }
  }
  {
    std::ofstream f(dir / "energy_trace.csv");
    f << std::setprecision(17) << "iteration,energy\n";
    for (std::size_t k = 0; k < res.energy_trace.size(); ++k) {
      f << k << ',' << res.energy_trace[k] << '\n';
    }
  }
  {
    std::ofstream f(dir / "sphere_samples.csv");
    f << std::setprecision(17) << "sample,scale,norm,energy\n";
    const auto& sp = art.mountain->sphere;
    for (std::size_t k = 0; k < sp.size(); ++k) {
      f << k << ',' << sp[k].scale << ',' << sp[k].norm << ',' << sp[k].energy
        << '\n';
    }
  }
}

}  // namespace

DiagnosticsReport run_pipeline(const ProblemSpec& spec,
                               std::vector<Stage> stages,
                               const PipelineOptions& options) {
  if (stages.empty()) throw InvalidArgument("run_pipeline: no stages given");
  DiagnosticsReport rep;
  Recorder rec(rep);
  json notes = json::array();
  if (std::find(stages.begin(), stages.end(), Stage::validate) == stages.end()) {
    stages.push_back(Stage::validate);
    notes.push_back("validate stage inserted as a dependency");
  }
  std::sort(stages.begin(), stages.end());
  stages.erase(std::unique(stages.begin(), stages.end()), stages.end());

  rep.body["config"] = to_json(spec);
  json names = json::array();
  for (Stage s : stages) names.push_back(to_string(s));
  rep.body["stages"] = names;

  const auto t0 = Clock::now();
  json timings;
  bool valid = true;
  SolveArtifacts art;
  for (Stage s : stages) {
    const auto ts = Clock::now();
    const std::string name = to_string(s);
    try {
      if (s == Stage::validate) {
        const ValidationReport v = validate_problem(spec);
        json entries = json::array();
        for (const auto& e : v.entries) {
          CheckEntry copy = e;
          copy.name = "validate." + e.name;
          rep.verdicts.push_back(copy);
          entries.push_back(to_json(copy));
        }
        valid = v.passed();
        rep.body["validate"] = {{"passed", valid}, {"verdicts", entries}};
      } else if (!valid) {
        rep.body[name] = {{"skipped", "hypotheses failed validation"}};
        notes.push_back(name + " skipped: hypotheses failed validation");
      } else if (s == Stage::check) {
        rep.body["check"] = run_check(spec, rec);
      } else {
        rep.body["solve"] = run_solve(spec, rec, art);
      }
    } catch (const std::exception& e) {
      rep.body[name]["error"] = e.what();
      rec.add(name, "stage_error", Verdict::fail, NAN, e.what());
    }
    timings[name] =
        std::chrono::duration<double>(Clock::now() - ts).count();
  }
  rep.body["notes"] = notes;

  json all = json::array();
  int n_pass = 0;
  int n_fail = 0;
  int n_rep = 0;
  for (const auto& e : rep.verdicts) {
    all.push_back(to_json(e));
    if (e.verdict == Verdict::pass) ++n_pass;
    if (e.verdict == Verdict::fail) ++n_fail;
    if (e.verdict == Verdict::reported) ++n_rep;
  }
  rep.body["verdicts"] = all;
  rep.body["summary"] = {{"pass", n_pass}, {"fail", n_fail}, {"reported", n_rep}};

  rep.runtime = {{"version", FRACROBIN_VERSION},
                 {"stage_seconds", timings},
                 {"wall_seconds",
                  std::chrono::duration<double>(Clock::now() - t0).count()},
                 {"deterministic", spec.deterministic},
                 {"threads", 1}};

  if (options.out_dir) {
    std::filesystem::create_directories(*options.out_dir);
    std::ofstream f(*options.out_dir / "diagnostics.json");
    f << rep.full().dump(2) << '\n';
    if (art.result) write_csv_outputs(*options.out_dir, art);
  }
  return rep;
}

}  // namespace fracrobin
