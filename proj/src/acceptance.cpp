#include "eland/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/bessel.hpp>

#include "eland/error.hpp"
#include "eland/experiments2d.hpp"
#include "eland/fit.hpp"
#include "eland/io.hpp"
#include "eland/profile.hpp"
#include "eland/radial.hpp"
#include "eland/solve2d.hpp"
#include "eland/spectrum.hpp"

namespace eland {

namespace {

constexpr int kCount = 15;

struct Spec {
  const char* title;
  double budget;
};

const Spec kSpecs[kCount] = {
    {"profile matches tanh(s/sqrt2)", 1.0},
    {"layer constant D'(0.1)", 0.1},
    {"boundary flux, n=2 R=40", 30.0},
    {"plateau on B_{R-D}", 30.0},
    {"critical radius, n=1 and n=2", 60.0},
    {"Modica margin and monotonicity sequence", 30.0},
    {"principal eigenvalue and zeta identity", 60.0},
    {"eigenfunction near the sphere", 30.0},
    {"exponential decay rates", 30.0},
    {"algebraic decay, pure power p=3", 30.0},
    {"30x30 square, monotone vs minimiser", 180.0},
    {"boundary layer width", 240.0},
    {"ordered two-well solutions", 180.0},
    {"saddle flux", 240.0},
    {"centre bound and torsion", 60.0},
};

double sqrt2() { return std::numbers::sqrt2; }

// Oracles computed independently of the solver code paths.
double tanh_profile(double s) { return std::tanh(s / sqrt2()); }
double layer_constant(double eps) { return sqrt2() * std::atanh(1.0 - eps); }
double pure_power3_profile(double s) { return 1.0 - 1.0 / (1.0 + sqrt2() * s); }

using Clock = std::chrono::steady_clock;

class Runner {
 public:
  explicit Runner(const AcceptanceOptions& o) : opt_(o) {}

  const RadialSolution& r40() {
    if (!r40_) {
      RadialProblem p;
      p.n = 2;
      p.R = 40.0;
      p.h = 0.01;
      r40_ = solve_radial_minimizer(p);
    }
    return *r40_;
  }

  void c1(CriterionResult& c) {
    const auto P = compute_profile(Potential::double_well(), 1.0 - 1e-9, 400);
    double err = 0.0;
    for (int i = 0; i <= 800; ++i) {
      const double s = 8.0 * i / 800.0;
      err = std::max(err, std::abs(P.value(s) - tanh_profile(s)));
    }
    c.checks.push_back(make_check("sup_error", err, 0.0, 1e-8, "le"));
  }

  void c2(CriterionResult& c) {
    const double d = compute_Dprime(Potential::double_well(), 0.1);
    c.checks.push_back(make_check("Dprime", d, layer_constant(0.1), 1e-6, "abs"));
  }

  void c3(CriterionResult& c) {
    c.checks.push_back(make_check("flux", r40().flux, 1.0 / sqrt2(), 0.007, "abs"));
  }

  void c4(CriterionResult& c) {
    const auto& s = r40();
    const double D = 2.6;
    double umin = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= s.mesh.K; ++k)
      if (s.mesh.r[k] <= s.R() - D) umin = std::min(umin, s.u[k]);
    c.checks.push_back(make_check("min_u_on_inner_ball", umin, 0.9, 0.0, "ge"));
  }

  void c5(CriterionResult& c) {
    const auto W = Potential::double_well();
    const auto a = critical_radius(W, 1, 1.0, 2.0, 1e-3);
    const auto b = critical_radius(W, 2, 2.0, 3.0, 1e-3);
    // R_c = sqrt(lambda_1 / |W''(0)|) with |W''(0)| = 1.
    c.checks.push_back(make_check("Rc_n1", a.numeric, std::numbers::pi / 2.0, 0.01, "abs"));
    c.checks.push_back(make_check("Rc_n2", b.numeric, boost::math::cyl_bessel_j_zero(0.0, 1), 0.01, "abs"));
  }

  void c6(CriterionResult& c) {
    const auto d = diagnostics(r40(), 0.1);
    c.checks.push_back(make_check("modica_margin", d.modica_margin, 0.0, 0.0, "gt"));
    c.checks.push_back(make_check("monotonicity_worst_drop", d.monotonicity_worst_drop,
                                  d.monotonicity_slack, 0.0, "le"));
  }

  void c7(CriterionResult& c) {
    const auto W = Potential::double_well();
    for (double R : {10.0, 20.0, 40.0}) {
      RadialProblem p;
      p.n = 2;
      p.R = R;
      const auto e = principal_eigenpair(solve_radial_minimizer(p));
      const std::string tag = "R" + format_number(R);
      c.checks.push_back(make_check("mu_" + tag, e.mu_R, 0.0, 0.0, "gt"));
      // lower bound -max|W''| on [0, 1], which is 2 for the double well
      c.checks.push_back(make_check("mu_" + tag + "_lower", e.mu_R, -2.0, 0.0, "ge"));
    }
    RadialProblem p;
    p.n = 2;
    p.R = 20.0;
    p.h = 0.0005;
    const auto z = zeta_identity_residual(solve_radial_minimizer(p));
    c.checks.push_back(make_check("zeta_residual_R20", z.residual, 0.0, 1e-6, "le"));
  }

  void c8(CriterionResult& c) {
    const auto e = principal_eigenpair(r40());
    c.checks.push_back(make_check("eigenfunction_gap", eigenfunction_profile_gap(e, r40(), 5.0), 0.0, 0.05, "le"));
  }

  void c9(CriterionResult& c) {
    RadialProblem p;
    p.n = 1;
    SweepOptions o;
    o.keep_solutions = true;
    const auto rows = sweep_R(p, {10.0, 20.0, 40.0}, o);
    for (const auto& r : rows)
      c.checks.push_back(make_check("decay_rate_R" + format_number(r.R), r.decay_rate, sqrt2(), 0.05, "rel"));
    const auto& s = *rows.back().solution;
    const double ratio = std::log(s.deviation_and_slope(0.5 * s.R()).first) / s.R();
    c.checks.push_back(make_check("log_ratio_s0.5_R40", ratio, -1.0 / sqrt2(), 0.10, "rel"));
  }

  void c10(CriterionResult& c) {
    const auto W = Potential::pure_power(1.0, 3.0);
    RadialProblem p;
    p.n = 2;
    p.R = 30.0;
    p.potential = W;
    const auto s = solve_radial_minimizer(p);
    // Mid-range window between the layer core and the centre.
    const double lo = s.R() / 6.0, hi = s.R() / 2.0;
    std::vector<double> x, y;
    for (int k = 0; k <= s.mesh.K; ++k) {
      const double d = s.R() - s.mesh.r[k];
      if (d < lo || d > hi) continue;
      x.push_back(std::log(d));
      y.push_back(std::log(s.deviation[k]));
    }
    const auto f = fit_line(x, y);
    c.checks.push_back(make_check("loglog_exponent", -f.slope, 1.0, 0.10, "rel"));

    const auto P = compute_profile(W, 1.0 - 1e-9, 400);
    double err = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = 50.0 * i / 1000.0;
      err = std::max(err, std::abs(P.value(t) - pure_power3_profile(t)));
    }
    c.checks.push_back(make_check("closed_form_error", err, 0.0, 1e-6, "le"));
  }

  void c11(CriterionResult& c) {
    const auto W = Potential::double_well();
    const DomainPtr dom = std::make_shared<const Domain2D>(Domain2D::rectangle(0, 30, 0, 30, 0.05));
    RadialProblem rp;
    rp.n = 2;
    rp.R = 12.0;
    const auto rad = solve_radial_minimizer(rp);
    const auto lower = lower_solution_field(dom, rad, 15.0, 15.0);
    MonotoneOptions mo;
    mo.compute_maximal = opt_.include_maximal;
    const auto mono = solve_monotone(dom, W, lower, mo);
    const auto mini = solve_minimizer_2d(dom, W);
    c.checks.push_back(make_check("sup_difference", sup_difference(mono.minimal, mini), 0.0, 5e-3, "le"));
    if (mono.report.max_minus_min)
      c.checks.push_back(make_check("maximal_minus_minimal", std::abs(*mono.report.max_minus_min), 0.0, 5e-3, "le"));
    const double eps = 0.1, D = 2.6;
    const auto rm = verify_main_theorem(mono.minimal, W, eps, D);
    const auto rn = verify_main_theorem(mini, W, eps, D);
    for (const auto* r : {&rm, &rn}) {
      const std::string tag = r == &rm ? "monotone" : "minimiser";
      c.checks.push_back(make_check(tag + "_min_u", r->min_value, 0.0, 0.0, "gt"));
      c.checks.push_back(make_check(tag + "_max_u", r->max_value, 1.0, 0.0, "lt"));
      c.checks.push_back(make_check(tag + "_plateau", r->plateau_ok ? 1.0 : 0.0, 1.0, 0.0, "ge"));
    }
    c.checks.push_back(make_check("decay_rate_k", rn.exp_fit ? rn.exp_fit->rate : std::nan(""),
                                  sqrt2(), 0.15, "rel"));
  }

  void c12(CriterionResult& c) {
    const auto W = Potential::double_well();
    const nlohmann::json disk = {
        {"shape", "disk"}, {"params", {{"center", {0.0, 0.0}}, {"radius", 1.0}}}, {"h", 0.1}};
    LayerOptions one;
    one.include_2d = false;
    const auto t1 = layer_experiment(disk, W, {200.0}, 0.1, one);
    LayerOptions two;
    two.include_1d = false;
    const auto t2 = layer_experiment(disk, W, {100.0}, 0.1, two);
    c.checks.push_back(make_check("width_lambda_1d", t1.rows[0].width_1d_lambda, layer_constant(0.1), 0.10, "rel"));
    c.checks.push_back(make_check("width_lambda_2d", t2.rows[0].width_lambda, layer_constant(0.1), 0.15, "rel"));
  }

  void c13(CriterionResult& c) {
    const auto W = Potential::multi_well({{1.0, 0.08}, {2.0, 0.0}});
    const DomainPtr dom = std::make_shared<const Domain2D>(Domain2D::rectangle(0, 30, 0, 30, 0.1));
    const auto r = multiwell_ordered(dom, W, 0.1);
    if (r.failure_index) c.error = "level " + std::to_string(*r.failure_index) + ": " + r.failure;
    c.checks.push_back(make_check("levels", static_cast<double>(r.solutions.size()), 2.0, 0.0, "ge"));
    if (r.min_gap.size() == 1) c.checks.push_back(make_check("min_gap", r.min_gap[0], 0.0, 0.0, "gt"));
    for (std::size_t i = 0; i < r.solutions.size(); ++i)
      c.checks.push_back(make_check("max_u" + std::to_string(i + 1), r.max_value[i], r.mu[i] - 0.1, 0.0, "ge"));
  }

  void c14(CriterionResult& c) {
    const auto r = saddle_demo(Potential::double_well(), 30.0, 0.1, 25.0);
    c.checks.push_back(make_check("flux_x2_25", r.flux_probe, 1.0 / sqrt2(), 0.05, "rel"));
    c.checks.push_back(make_check("min_u_inner", r.min_inner, 0.0, 0.0, "gt"));
  }

  void c15(CriterionResult& c) {
    const auto W = Potential::pure_power(1.0, 3.0);
    RadialProblem p;
    p.n = 2;
    p.potential = W;
    const auto rows = sweep_R(p, {10.0, 20.0, 40.0});
    const auto rep = center_bound_scan(rows, W, 2);
    c.checks.push_back(make_check("centre_slope", rep.slope, -1.8, 0.0, "le"));
    for (int n = 1; n <= 3; ++n)
      c.checks.push_back(make_check("torsion_z0_n" + std::to_string(n), torsion_center(n), 1.0 / (2.0 * n), 1e-6, "abs"));
  }

  CriterionResult run(int id) {
    CriterionResult c;
    c.id = id;
    c.title = kSpecs[id - 1].title;
    c.budget_seconds = kSpecs[id - 1].budget;
    c.known_unattainable = acceptance_known_unattainable(id);
    const auto t0 = Clock::now();
    try {
      switch (id) {
        case 1: c1(c); break;
        case 2: c2(c); break;
        case 3: c3(c); break;
        case 4: c4(c); break;
        case 5: c5(c); break;
        case 6: c6(c); break;
        case 7: c7(c); break;
        case 8: c8(c); break;
        case 9: c9(c); break;
        case 10: c10(c); break;
        case 11: c11(c); break;
        case 12: c12(c); break;
        case 13: c13(c); break;
        case 14: c14(c); break;
        case 15: c15(c); break;
        default: fail(ErrorKind::usage, "unknown criterion");
      }
    } catch (const std::exception& e) {
      c.error = e.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    // The shared R = 40 solve is charged to the first criterion that uses it.
    c.checks.push_back(make_check("wall_time_s", c.seconds, c.budget_seconds, 0.0, "le"));
    c.pass = !c.checks.empty() &&
             std::all_of(c.checks.begin(), c.checks.end(), [](const Check& k) { return k.pass; }) &&
             c.error.empty();
    return c;
  }

 private:
  const AcceptanceOptions& opt_;
  std::optional<RadialSolution> r40_;
};

}  // namespace

Check make_check(std::string name, double value, double target, double tol, std::string relation) {
  Check c{std::move(name), value, target, tol, std::move(relation), false};
  if (!std::isfinite(value)) return c;
  if (c.relation == "abs") c.pass = std::abs(value - target) <= tol;
  else if (c.relation == "rel") c.pass = std::abs(value - target) <= tol * std::abs(target);
  else if (c.relation == "le") c.pass = value <= target + tol;
  else if (c.relation == "ge") c.pass = value >= target - tol;
  else if (c.relation == "lt") c.pass = value < target + tol;
  else if (c.relation == "gt") c.pass = value > target - tol;
  else fail(ErrorKind::usage, "make_check: unknown relation " + c.relation);
  return c;
}

nlohmann::json Check::to_json() const {
  nlohmann::json j = {{"name", name}, {"target", target}, {"tolerance", tolerance},
                      {"relation", relation}, {"pass", pass}};
  if (std::isfinite(value)) j["value"] = value;
  else j["value"] = nullptr;
  return j;
}

nlohmann::json CriterionResult::to_json() const {
  auto checks_j = nlohmann::json::array();
  for (const auto& c : checks) checks_j.push_back(c.to_json());
  nlohmann::json j = {{"id", id},
                      {"title", title},
                      {"pass", pass},
                      {"known_unattainable", known_unattainable},
                      {"seconds", seconds},
                      {"budget_seconds", budget_seconds},
                      {"checks", checks_j}};
  if (!error.empty()) j["error"] = error;
  return j;
}

std::string CriterionResult::line() const {
  std::string s = pass ? "PASS" : "FAIL";
  char head[32];
  std::snprintf(head, sizeof head, " %02d ", id);
  s += head;
  s += title;
  for (const auto& c : checks) {
    s += " | " + c.name + "=" + (std::isfinite(c.value) ? format_number(c.value) : "nan");
    const char* rel = c.relation == "abs" ? "+-" : c.relation == "rel" ? "+-rel " :
                      c.relation == "le" ? "<=" : c.relation == "ge" ? ">=" :
                      c.relation == "lt" ? "<" : ">";
    s += std::string(" (") + rel;
    if (c.relation == "abs" || c.relation == "rel")
      s += format_number(c.tolerance) + " of " + format_number(c.target);
    else if (c.target == 0.0 && c.tolerance != 0.0)
      s += format_number(c.tolerance);
    else
      s += format_number(c.target) + (c.tolerance != 0.0 ? " tol " + format_number(c.tolerance) : "");
    s += c.pass ? ")" : ") x";
  }
  if (!error.empty()) s += " | error: " + error;
  if (!pass && known_unattainable) s += " | known unattainable";
  return s;
}

int acceptance_count() { return kCount; }

bool acceptance_known_unattainable(int id) { return id == 3 || id == 8 || id == 10; }

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  std::vector<int> ids = options.only;
  if (ids.empty())
    for (int i = 1; i <= kCount; ++i) ids.push_back(i);
  for (int id : ids) require(id >= 1 && id <= kCount, ErrorKind::usage, "acceptance: criterion id out of range");
  Runner runner(options);
  std::vector<CriterionResult> out;
  for (int id : ids) {
    out.push_back(runner.run(id));
    if (options.on_result) options.on_result(out.back());
  }
  return out;
}

}  // namespace eland
