#include "eland/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "eland/acceptance.hpp"
#include "eland/error.hpp"
#include "eland/experiments2d.hpp"
#include "eland/io.hpp"
#include "eland/parallel.hpp"
#include "eland/profile.hpp"
#include "eland/radial.hpp"
#include "eland/solve2d.hpp"
#include "eland/spectrum.hpp"

namespace eland::cli {

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
    case ErrorKind::domain:
    case ErrorKind::assumption:
    case ErrorKind::bracket:
    case ErrorKind::budget: return Exit::usage;
    case ErrorKind::numeric:
    case ErrorKind::insufficient_data: return Exit::numeric;
    case ErrorKind::monotonicity:
    case ErrorKind::undefined: return Exit::invariant;
  }
  return Exit::invariant;
}

/// A number together with the tolerance it was computed or checked to.
nlohmann::json measured(double value, double tolerance) {
  return {{"value", value}, {"tolerance", tolerance}};
}

nlohmann::json parse_json_arg(const std::string& text, const char* what) {
  std::string body = text;
  if (!text.empty() && text.front() != '{' && text.front() != '[') {
    if (!std::filesystem::exists(text)) return nlohmann::json(text);
    body = read_text_file(text);
  }
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::usage, std::string("malformed ") + what + " JSON: " + e.what());
  }
}

Potential parse_potential(const std::string& text) {
  nlohmann::json j = parse_json_arg(text, "potential");
  if (j.is_string()) j = {{"kind", j.get<std::string>()}};
  return Potential::from_json(j);
}

nlohmann::json parse_domain(const std::string& text) {
  const nlohmann::json j = parse_json_arg(text, "domain");
  require(j.is_object(), ErrorKind::usage, "domain: expected a JSON object {shape, params, h}");
  return j;
}

struct Output {
  std::string dir = ".";
  bool csv = true;

  void write(const std::string& name, const std::string& text) const {
    if (!csv) return;
    std::filesystem::create_directories(dir);
    write_text_file((std::filesystem::path(dir) / name).string(), text);
  }
};

struct Checks {
  nlohmann::json list = nlohmann::json::array();
  bool all = true;

  void add(const Check& c) {
    list.push_back(c.to_json());
    all = all && c.pass;
  }
  void add(const std::string& name, double value, double target, double tol, const std::string& rel) {
    add(make_check(name, value, target, tol, rel));
  }
  void flag(const std::string& name, bool ok) { add(name, ok ? 1.0 : 0.0, 1.0, 0.0, "ge"); }
};

int finish(std::ostream& out, nlohmann::json j, const Checks& checks) {
  j["checks"] = checks.list;
  j["all_checks_pass"] = checks.all;
  out << dump_json(j);
  return checks.all ? Exit::ok : Exit::invariant;
}

constexpr double kQuadratureTol = 1e-9;
constexpr double kNewtonTol = 1e-10;

nlohmann::json sweep_rows_json(const std::vector<SweepRow>& rows) {
  auto a = nlohmann::json::array();
  for (const auto& r : rows)
    a.push_back({{"R", r.R},
                 {"flux", r.flux},
                 {"u0", r.u0},
                 {"mu_minus_u0", r.w0},
                 {"plateau_width", r.plateau_width},
                 {"energy_ratio", r.energy_ratio},
                 {"decay_rate", std::isfinite(r.decay_rate) ? nlohmann::json(r.decay_rate) : nlohmann::json()},
                 {"profile_gap", r.profile_gap},
                 {"status", r.status}});
  return a;
}

/// Expands --config FILE into command-line form: {"command": "radial",
/// "R": 40, "potential": {...}} becomes radial --R 40 --potential {...}.
/// Explicit flags that follow win over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  auto it = std::find(args.begin(), args.end(), "--config");
  if (it == args.end()) return args;
  require(it + 1 != args.end(), ErrorKind::usage, "--config needs a file");
  nlohmann::json cfg;
  try {
    cfg = nlohmann::json::parse(read_text_file(*(it + 1)));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::usage, std::string("malformed config JSON: ") + e.what());
  }
  require(cfg.is_object() && cfg.contains("command") && cfg["command"].is_string(), ErrorKind::usage,
          "config: expected an object with a 'command' string");
  std::vector<std::string> rest(args.begin(), it);
  rest.insert(rest.end(), it + 2, args.end());
  const std::string command = cfg["command"].get<std::string>();
  std::vector<std::string> out;
  // global options go before the subcommand
  if (cfg.contains("threads")) out = {"--threads", cfg["threads"].dump()};
  out.push_back(command);
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command" || key == "threads") continue;
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back(flag);
    } else if (value.is_array() && !value.empty() && value.front().is_number()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + v.dump();
      out.insert(out.end(), {flag, joined});
    } else if (value.is_string()) {
      out.insert(out.end(), {flag, value.get<std::string>()});
    } else {
      out.insert(out.end(), {flag, value.dump()});
    }
  }
  auto cmd = std::find(rest.begin(), rest.end(), command);
  if (cmd != rest.end()) rest.erase(cmd);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  try {
    args = expand_config(raw_args);
  } catch (const Error& e) {
    err << dump_json(error_to_json(e));
    return exit_code(e.kind());
  }
  CLI::App app{"eland: profiles, radial minimisers, spectra and 2-D solutions of Delta u = W'(u)", "eland"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_flag("--help", "print this help and exit");
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::optional<unsigned> threads;
  std::string config_path;
  app.add_option("--config", config_path, "JSON run configuration with a 'command' key");
  app.add_option("--threads", threads, "cap on worker threads (same as ELAND_THREADS)")->check(CLI::PositiveNumber);

  Output output;
  std::string potential_text = "double_well";
  auto common = [&](CLI::App* c, bool with_potential = true) {
    c->add_option("--out", output.dir, "directory for CSV output");
    c->add_flag("!--no-csv", output.csv, "skip CSV output");
    if (with_potential)
      c->add_option("--potential", potential_text, "builtin name, inline JSON or JSON file")->capture_default_str();
  };

  // profile
  double eps = 0.1;
  double u_max = -1.0, start = 0.0, fit_lo = 2.0, fit_hi = 8.0;
  int points = 400;
  auto* c_profile = app.add_subcommand("profile", "connecting profile U, D' and the decay fit");
  common(c_profile);
  c_profile->add_option("--eps", eps, "plateau tolerance for D'")->capture_default_str();
  c_profile->add_option("--u-max", u_max, "largest sampled value (default mu (1 - 1e-9))");
  c_profile->add_option("--start", start, "U(0)")->capture_default_str();
  c_profile->add_option("--points", points, "base grid size")->capture_default_str();
  c_profile->add_option("--fit-lo", fit_lo)->capture_default_str();
  c_profile->add_option("--fit-hi", fit_hi)->capture_default_str();

  // radial / spectrum
  int n = 2;
  double R = 10.0, h = 0.0, boundary = 0.0;
  auto radial_opts = [&](CLI::App* c) {
    c->add_option("--n", n, "space dimension")->capture_default_str();
    c->add_option("--R", R, "ball radius")->capture_default_str();
    c->add_option("--h", h, "mesh (0 picks min(0.01, R/2000))")->capture_default_str();
  };
  auto* c_radial = app.add_subcommand("radial", "energy minimiser on a ball");
  common(c_radial);
  radial_opts(c_radial);
  c_radial->add_option("--eps", eps)->capture_default_str();
  c_radial->add_option("--boundary-value", boundary)->capture_default_str();

  std::vector<double> R_list;
  bool center_bound = false, stability = false;
  auto* c_sweep = app.add_subcommand("sweep", "independent radial solves over a list of radii");
  common(c_sweep);
  c_sweep->add_option("--n", n)->capture_default_str();
  c_sweep->add_option("--h", h)->capture_default_str();
  c_sweep->add_option("--R-list", R_list, "radii")->required()->delimiter(',');
  c_sweep->add_option("--eps", eps)->capture_default_str();
  c_sweep->add_flag("--center-bound", center_bound, "fit log(-W'(u(0))) against log R");
  c_sweep->add_flag("--stability", stability, "principal eigenvalue for every row");

  auto* c_spectrum = app.add_subcommand("spectrum", "principal eigenpair of the linearisation");
  common(c_spectrum);
  radial_opts(c_spectrum);

  // 2-D
  std::string domain_text;
  std::string method = "both";
  double D = 2.6, ball_R = 0.0;
  auto* c_solve2d = app.add_subcommand("solve2d", "2-D Dirichlet solution by monotone iteration and minimisation");
  common(c_solve2d);
  c_solve2d->add_option("--domain", domain_text, "{shape, params, h} as inline JSON or file")->required();
  c_solve2d->add_option("--method", method)->check(CLI::IsMember({"monotone", "minimizer", "both"}))->capture_default_str();
  c_solve2d->add_option("--eps", eps)->capture_default_str();
  c_solve2d->add_option("--D", D, "plateau distance, must exceed D'")->capture_default_str();
  c_solve2d->add_option("--ball-R", ball_R, "radius of the lower-solution ball (default 0.8 dist_max)");

  std::vector<double> lambdas;
  double max_h_scaled = 0.2;
  std::size_t budget = 4000000;
  bool no_1d = false, no_2d = false;
  auto* c_layer = app.add_subcommand("layer", "boundary-layer width of Delta u = lambda^2 W'(u)");
  common(c_layer);
  c_layer->add_option("--domain", domain_text)->required();
  c_layer->add_option("--lambda", lambdas)->required()->delimiter(',');
  c_layer->add_option("--eps", eps)->capture_default_str();
  c_layer->add_option("--max-h-scaled", max_h_scaled, "largest lambda h")->capture_default_str();
  c_layer->add_option("--node-budget", budget)->capture_default_str();
  c_layer->add_flag("--no-1d", no_1d);
  c_layer->add_flag("--no-2d", no_2d);

  double ball_fraction = 0.8;
  auto* c_multi = app.add_subcommand("multiwell", "ordered solutions for a multi-well potential");
  common(c_multi);
  c_multi->add_option("--domain", domain_text)->required();
  c_multi->add_option("--eps", eps)->capture_default_str();
  c_multi->add_option("--ball-fraction", ball_fraction)->capture_default_str();

  double L = 30.0, probe = -1.0;
  double h2 = 0.1;
  auto* c_saddle = app.add_subcommand("saddle", "saddle solution on the odd-reflected square");
  common(c_saddle);
  c_saddle->add_option("--L", L)->capture_default_str();
  c_saddle->add_option("--h", h2)->capture_default_str();
  c_saddle->add_option("--probe", probe, "x2 of the reported flux (default 5L/6)");

  double R_lo = 1.0, R_hi = 3.0, tol = 1e-3;
  auto* c_crit = app.add_subcommand("critical-radius", "smallest radius with a nontrivial minimiser");
  common(c_crit);
  c_crit->add_option("--n", n)->capture_default_str();
  c_crit->add_option("--R-lo", R_lo)->capture_default_str();
  c_crit->add_option("--R-hi", R_hi)->capture_default_str();
  c_crit->add_option("--tol", tol)->capture_default_str();

  std::string suite = "primary";
  std::vector<int> only;
  bool skip_maximal = false;
  auto* c_verify = app.add_subcommand("verify", "acceptance suite");
  c_verify->add_option("--suite", suite)->check(CLI::IsMember({"primary"}))->capture_default_str();
  c_verify->add_option("--only", only, "criterion ids")->delimiter(',');
  c_verify->add_flag("--skip-maximal", skip_maximal, "skip the maximal solution in the square run");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Exit::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return Exit::ok;
    }
    err << dump_json({{"error", {{"kind", "usage"}, {"message", e.what()}}}});
    return Exit::usage;
  }

  try {
    if (threads) setenv("ELAND_THREADS", std::to_string(*threads).c_str(), 1);

    if (*c_profile) {
      const Potential W = parse_potential(potential_text);
      const double umax = u_max < 0.0 ? W.mu() * (1.0 - 1e-9) : u_max;
      const auto P = compute_profile(W, umax, points, start);
      Checks checks;
      checks.add("first_integral_residual", P.first_integral_residual(), 0.0, 1e-12, "le");
      nlohmann::json j = {{"command", "profile"},
                          {"potential", W.to_json()},
                          {"s_max", P.s_max()},
                          {"u_max", P.u_max()},
                          {"points", P.s().size()},
                          {"first_integral_residual", measured(P.first_integral_residual(), 1e-12)},
                          {"notes", P.notes()}};
      if (start == 0.0) {
        j["epsilon"] = eps;
        j["Dprime"] = measured(compute_Dprime(W, eps), kQuadratureTol);
      }
      try {
        const auto fit = fit_profile_decay(P, fit_lo, std::min(fit_hi, P.s_max()));
        j["decay_fit"] = fit.to_json();
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::insufficient_data) throw;
        j["decay_fit"] = nullptr;
      }
      output.write("profile.csv", P.to_csv());
      return finish(out, j, checks);
    }

    if (*c_radial) {
      RadialProblem p;
      p.n = n;
      p.R = R;
      p.h = h;
      p.boundary_value = boundary;
      p.potential = parse_potential(potential_text);
      const auto s = solve_radial_minimizer(p.validated());
      Checks checks;
      const double rtol = std::max(kNewtonTol, 16.0 * 2.220446049250313e-16 / (s.mesh.h * s.mesh.h));
      checks.add("residual", s.residual, 0.0, rtol, "le");
      nlohmann::json j = {{"command", "radial"}, {"solution", s.summary_json()}};
      if (!s.trivial) {
        const auto d = diagnostics(s, eps);
        j["diagnostics"] = d.to_json();
        checks.add("modica_margin", d.modica_margin, 0.0, 0.0, "ge");
        checks.add("monotonicity_worst_drop", d.monotonicity_worst_drop, d.monotonicity_slack, 0.0, "le");
      }
      output.write("radial.csv", s.to_csv());
      return finish(out, j, checks);
    }

    if (*c_sweep) {
      RadialProblem p;
      p.n = n;
      p.h = h;
      p.potential = parse_potential(potential_text);
      for (double r : R_list) {
        RadialProblem q = p;
        q.R = r;
        (void)q.validated();
      }
      SweepOptions o;
      o.epsilon = eps;
      o.keep_solutions = stability;
      const auto rows = sweep_R(p, R_list, o);
      Checks checks;
      for (const auto& r : rows) checks.flag("row_R" + format_number(r.R) + "_ok", r.status == "ok");
      nlohmann::json j = {{"command", "sweep"}, {"rows", sweep_rows_json(rows)}, {"epsilon", eps}};
      if (center_bound) j["center_bound"] = center_bound_scan(rows, p.potential, n).to_json();
      if (stability) j["stability"] = stability_sweep(rows).to_json();
      output.write("sweep.csv", sweep_to_csv(rows));
      return finish(out, j, checks);
    }

    if (*c_spectrum) {
      RadialProblem p;
      p.n = n;
      p.R = R;
      p.h = h;
      p.potential = parse_potential(potential_text);
      const auto s = solve_radial_minimizer(p.validated());
      require(!s.trivial, ErrorKind::undefined, "spectrum: the minimiser is trivial at this radius");
      const auto e = principal_eigenpair(s);
      const auto z = zeta_identity_residual(s);
      Checks checks;
      checks.add("mu_R_lower_bound", e.mu_R, e.lower_bound, 0.0, "ge");
      checks.add("extra_step_change", e.extra_step_change, 0.0, 1e-10, "le");
      nlohmann::json j = {{"command", "spectrum"},
                          {"R", s.R()},
                          {"h", s.mesh.h},
                          {"mu_R", measured(e.mu_R, 1e-10)},
                          {"residual_zeta", z.to_json()},
                          {"phi_profile_gap", eigenfunction_profile_gap(e, s)},
                          {"eigen", e.to_json()}};
      output.write("phi.csv", e.to_csv());
      return finish(out, j, checks);
    }

    if (*c_solve2d) {
      const Potential W = parse_potential(potential_text);
      const DomainPtr dom = build_domain(parse_domain(domain_text));
      require(D > compute_Dprime(W, eps), ErrorKind::domain, "solve2d: D must exceed D'(eps)");
      Checks checks;
      nlohmann::json j = {{"command", "solve2d"}, {"domain", dom->to_json()}, {"potential", W.to_json()}};
      std::optional<GridField2D> mono, mini;
      if (method != "minimizer") {
        std::size_t centre = dom->unknowns().front();
        for (std::size_t k : dom->unknowns())
          if (dom->dist()[k] > dom->dist()[centre]) centre = k;
        RadialProblem rp;
        rp.n = 2;
        rp.R = ball_R > 0.0 ? ball_R : 0.8 * dom->dist()[centre];
        rp.potential = W;
        const auto rad = solve_radial_minimizer(rp);
        require(!rad.trivial, ErrorKind::domain, "solve2d: the lower-solution ball is below the critical radius");
        const auto lower = lower_solution_field(dom, rad, dom->x(centre), dom->y(centre));
        const auto m = solve_monotone(dom, W, lower);
        j["monotone"] = m.report.to_json();
        j["monotone"]["ball"] = {{"R", rp.R}, {"center", {dom->x(centre), dom->y(centre)}}};
        checks.add("monotone_residual", m.report.residual_minimal, 0.0, 1e-8, "le");
        if (m.report.max_minus_min) checks.add("maximal_minus_minimal", *m.report.max_minus_min, 0.0, 0.0, "ge");
        mono = m.minimal;
        output.write("field_monotone.csv", m.minimal.to_csv());
      }
      if (method != "monotone") {
        mini = solve_minimizer_2d(dom, W);
        checks.add("minimizer_residual", mini->residual, 0.0, 1e-8, "le");
        output.write("field_minimizer.csv", mini->to_csv());
      }
      const GridField2D& f = mini ? *mini : *mono;
      if (mono && mini) j["sup_difference"] = measured(sup_difference(*mono, *mini), 5e-3);
      if (mono && mini) checks.add("sup_difference", sup_difference(*mono, *mini), 0.0, 5e-3, "le");
      if (!f.trivial) {
        const auto rep = verify_main_theorem(f, W, eps, D);
        j["report"] = rep.to_json();
        checks.flag("bounds", rep.bounds_ok);
        checks.flag("plateau", rep.plateau_ok);
      } else {
        j["report"] = nullptr;
        j["trivial"] = true;
      }
      return finish(out, j, checks);
    }

    if (*c_layer) {
      const Potential W = parse_potential(potential_text);
      LayerOptions o;
      o.max_h_scaled = max_h_scaled;
      o.node_budget = budget;
      o.include_1d = !no_1d;
      o.include_2d = !no_2d;
      require(o.include_1d || o.include_2d, ErrorKind::usage, "layer: both --no-1d and --no-2d given");
      const auto t = layer_experiment(parse_domain(domain_text), W, lambdas, eps, o);
      Checks checks;
      for (const auto& r : t.rows) {
        checks.flag("row_lambda" + format_number(r.lambda) + "_ok", r.status == "ok");
        if (o.include_2d) checks.add("residual_lambda" + format_number(r.lambda), r.residual, 0.0, 1e-8, "le");
      }
      nlohmann::json j = t.to_json();
      j["command"] = "layer";
      output.write("layer.csv", t.to_csv());
      return finish(out, j, checks);
    }

    if (*c_multi) {
      const Potential W = parse_potential(potential_text);
      MultiwellOptions o;
      o.ball_fraction = ball_fraction;
      const auto r = multiwell_ordered(build_domain(parse_domain(domain_text)), W, eps, o);
      Checks checks;
      checks.flag("ordered", r.ordered);
      checks.flag("plateaus", r.plateaus_ok);
      for (std::size_t i = 0; i < r.min_gap.size(); ++i)
        checks.add("min_gap_" + std::to_string(i + 2), r.min_gap[i], 0.0, 0.0, "gt");
      for (std::size_t i = 0; i < r.solutions.size(); ++i)
        output.write("multiwell_u" + std::to_string(i + 1) + ".csv", r.solutions[i].to_csv());
      nlohmann::json j = r.to_json();
      j["command"] = "multiwell";
      return finish(out, j, checks);
    }

    if (*c_saddle) {
      const auto r = saddle_demo(parse_potential(potential_text), L, h2, probe > 0.0 ? probe : 5.0 * L / 6.0);
      Checks checks;
      checks.add("min_u_inner", r.min_inner, 0.0, 0.0, "gt");
      checks.add("residual", r.field.residual, 0.0, 1e-8, "le");
      nlohmann::json j = r.to_json();
      j["command"] = "saddle";
      j["flux_probe"] = measured(r.flux_probe, r.field.domain->h() * r.field.domain->h());
      output.write("saddle.csv", r.field.to_csv());
      output.write("saddle_flux.csv", r.flux_csv());
      return finish(out, j, checks);
    }

    if (*c_crit) {
      const auto c = critical_radius(parse_potential(potential_text), n, R_lo, R_hi, tol);
      Checks checks;
      if (std::isfinite(c.analytic)) checks.add("numeric_vs_analytic", c.numeric, c.analytic, 0.01, "abs");
      nlohmann::json j = c.to_json();
      j["command"] = "critical-radius";
      j["tolerance"] = tol;
      return finish(out, j, checks);
    }

    if (*c_verify) {
      AcceptanceOptions o;
      o.only = only;
      o.include_maximal = !skip_maximal;
      o.on_result = [&](const CriterionResult& r) { err << r.line() << '\n' << std::flush; };
      const auto results = run_acceptance(o);
      auto arr = nlohmann::json::array();
      bool all = true;
      for (const auto& r : results) {
        arr.push_back(r.to_json());
        all = all && r.pass;
      }
      out << dump_json({{"command", "verify"}, {"suite", suite}, {"criteria", arr}, {"all_pass", all}});
      return all ? Exit::ok : Exit::invariant;
    }
  } catch (const Error& e) {
    err << dump_json(error_to_json(e));
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << dump_json({{"error", {{"kind", "usage"}, {"message", e.what()}}}});
    return Exit::usage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << dump_json({{"error", {{"kind", "usage"}, {"message", e.what()}}}});
    return Exit::usage;
  }
  return Exit::usage;
}

}  // namespace eland::cli
