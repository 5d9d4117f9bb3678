#include "eland/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "eland/error.hpp"
#include "eland/fit.hpp"
#include "eland/io.hpp"
#include "eland/parallel.hpp"
#include "eland/tridiag.hpp"

namespace eland {

namespace {

constexpr double kFlowTolerance = 1e-4;
constexpr double kNewtonTolerance = 1e-10;
constexpr int kMaxFlowIterations = 200000;
constexpr int kMaxNewtonIterations = 50;

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

// Lagrange cubic through nodes x0 + {0,1,2,3} h; returns value and derivative.
std::pair<double, double> cubic(const double (&y)[4], double t, double h) {
  const double l0 = -(t - 1) * (t - 2) * (t - 3) / 6.0;
  const double l1 = t * (t - 2) * (t - 3) / 2.0;
  const double l2 = -t * (t - 1) * (t - 3) / 2.0;
  const double l3 = t * (t - 1) * (t - 2) / 6.0;
  const double d0 = -((t - 2) * (t - 3) + (t - 1) * (t - 3) + (t - 1) * (t - 2)) / 6.0;
  const double d1 = ((t - 2) * (t - 3) + t * (t - 3) + t * (t - 2)) / 2.0;
  const double d2 = -((t - 1) * (t - 3) + t * (t - 3) + t * (t - 1)) / 2.0;
  const double d3 = ((t - 1) * (t - 2) + t * (t - 2) + t * (t - 1)) / 6.0;
  return {l0 * y[0] + l1 * y[1] + l2 * y[2] + l3 * y[3],
          (d0 * y[0] + d1 * y[1] + d2 * y[2] + d3 * y[3]) / h};
}

// Energy gradient divided by the node weight, i.e. the strong-form residual
// -Delta_h w - W'(mu - w), on the free nodes 0..K-1.
double residual_max(const RadialMesh& m, const Potential& W, const std::vector<double>& w) {
  double worst = 0.0;
  for (int k = 0; k < m.K; ++k) {
    double flux = m.stiff[k] * (w[k] - w[k + 1]);
    if (k > 0) flux += m.stiff[k - 1] * (w[k] - w[k - 1]);
    const double g = flux / m.vol[k] - W.eval_from_well(w[k], 1);
    worst = std::max(worst, std::abs(g));
  }
  return worst;
}

std::vector<double> barrier_guess(const RadialMesh& m, const Potential& W, double b,
                                  std::vector<std::string>& notes) {
  const double mu = W.mu();
  const double wb = mu - b;
  std::vector<double> w(m.K + 1, wb);
  try {
    const ProfileU P = compute_profile(W, mu * (1.0 - 1e-9), 200, b);
    for (int k = 0; k <= m.K; ++k) w[k] = std::clamp(P.deviation_at(m.R - m.r[k]), 0.0, wb);
  } catch (const Error& e) {
    notes.push_back(std::string("barrier guess unavailable (") + e.what() + "); linear ramp used");
    w = linear_ramp_deviation(m, W, b);
  }
  w[m.K] = wb;
  return w;
}

}  // namespace

RadialProblem RadialProblem::validated() const {
  require(n >= 1, ErrorKind::domain, "radial: n must be >= 1");
  require(std::isfinite(R) && R > 0.0, ErrorKind::domain, "radial: R must be positive");
  const double mu = potential.mu();
  const double lo = std::min(0.0, potential.mu_minus());
  require(std::isfinite(boundary_value) && boundary_value >= lo, ErrorKind::domain,
          "radial: boundary_value below min(0, mu_minus)");
  require(boundary_value < mu, ErrorKind::domain,
          "radial: boundary_value must be below mu (projection infeasible)");
  require(potential.dW(boundary_value) <= 1e-12, ErrorKind::domain,
          "radial: W'(boundary_value) must be <= 0");
  RadialProblem p = *this;
  if (p.h == 0.0) {
    p.h = std::min(0.01, R / 2000.0);
    p.h = R / std::ceil(R / p.h - 1e-9);
  }
  require(std::isfinite(p.h) && p.h > 0.0, ErrorKind::domain, "radial: h must be positive");
  const double K = R / p.h;
  require(std::abs(K - std::round(K)) <= 1e-6 * K, ErrorKind::domain,
          "radial: R / h must be an integer");
  require(std::round(K) >= 32, ErrorKind::domain, "radial: need at least 32 cells");
  return p;
}

int RadialProblem::nodes() const { return static_cast<int>(std::lround(R / h)); }

RadialMesh make_radial_mesh(int n, double R, double h) {
  RadialMesh m;
  m.n = n;
  m.K = static_cast<int>(std::lround(R / h));
  m.h = R / m.K;
  m.R = R;
  m.sphere_area = sphere_area(n);
  m.r.resize(m.K + 1);
  m.stiff.resize(m.K);
  m.vol.resize(m.K + 1);
  for (int k = 0; k <= m.K; ++k) m.r[k] = k * m.h;
  m.r[m.K] = R;
  for (int k = 0; k < m.K; ++k) m.stiff[k] = std::pow((k + 0.5) * m.h, n - 1) / m.h;
  auto shell = [&](double a, double b) { return (std::pow(b, n) - std::pow(a, n)) / n; };
  m.vol[0] = shell(0.0, 0.5 * m.h);
  for (int k = 1; k < m.K; ++k) m.vol[k] = shell((k - 0.5) * m.h, (k + 0.5) * m.h);
  m.vol[m.K] = shell(R - 0.5 * m.h, R);
  return m;
}

double radial_energy(const RadialMesh& m, const Potential& W, const std::vector<double>& w) {
  double e = 0.0;
  for (int k = 0; k < m.K; ++k) {
    const double d = w[k + 1] - w[k];
    e += 0.5 * m.stiff[k] * d * d;
  }
  for (int k = 0; k <= m.K; ++k) e += m.vol[k] * W.eval_from_well(w[k], 0);
  return m.sphere_area * e;
}

std::vector<double> linear_ramp_deviation(const RadialMesh& m, const Potential& W,
                                          double boundary_value) {
  const double wb = W.mu() - boundary_value;
  std::vector<double> w(m.K + 1);
  const double start = std::max(0.0, m.R - 1.0);
  const double width = m.R - start;
  for (int k = 0; k <= m.K; ++k)
    w[k] = m.r[k] <= start ? 0.0 : wb * (m.r[k] - start) / width;
  w[m.K] = wb;
  return w;
}

RadialSolution solve_radial_minimizer(const RadialProblem& problem) {
  RadialSolution sol;
  sol.problem = problem.validated();
  const RadialProblem& P = sol.problem;
  const Potential& W = P.potential;
  const double mu = W.mu();
  const double b = P.boundary_value;
  const double wb = mu - b;
  const double w_max = mu - std::min({0.0, W.mu_minus(), b});
  sol.mesh = make_radial_mesh(P.n, P.R, P.h);
  const RadialMesh& m = sol.mesh;
  const int K = m.K;

  std::vector<double> w = barrier_guess(m, W, b, sol.notes);

  // Phase 1: projected semi-implicit flow (A + L V) w+ = L V w + V W'(mu - w).
  const double Lambda = W.max_abs_d2W(std::min({0.0, W.mu_minus(), b}), mu) + 1.0;
  std::vector<double> diag(K), off(K > 1 ? K - 1 : 0), rhs(K);
  for (int k = 0; k < K; ++k) {
    diag[k] = m.stiff[k] + (k > 0 ? m.stiff[k - 1] : 0.0) + Lambda * m.vol[k];
    if (k + 1 < K) off[k] = -m.stiff[k];
  }
  double res = residual_max(m, W, w);
  int it = 0;
  for (; it < kMaxFlowIterations && res > kFlowTolerance; ++it) {
    for (int k = 0; k < K; ++k) rhs[k] = m.vol[k] * (Lambda * w[k] + W.eval_from_well(w[k], 1));
    rhs[K - 1] += m.stiff[K - 1] * wb;
    solve_sym_tridiagonal(diag, off, rhs);
    for (int k = 0; k < K; ++k) w[k] = std::clamp(rhs[k], 0.0, w_max);
    if (it % 16 == 15 || it < 4) res = residual_max(m, W, w);
  }
  sol.flow_iterations = it;
  if (res > kFlowTolerance) sol.notes.push_back("gradient flow hit its iteration cap");

  // Phase 2: damped Newton on the Euler-Lagrange system.
  res = residual_max(m, W, w);
  std::vector<double> grad(K), trial(K + 1);
  // Rounding in the second differences sets a floor near eps |w| / h^2,
  // which exceeds the nominal tolerance on fine meshes with O(1) values.
  const double floor_tol =
      std::max(kNewtonTolerance, 16.0 * std::numeric_limits<double>::epsilon() * w_max / (m.h * m.h));
  int newton = 0;
  bool polished = false;
  for (; newton < kMaxNewtonIterations; ++newton) {
    if (res <= kNewtonTolerance && polished) break;
    if (res <= kNewtonTolerance) polished = true;
    for (int k = 0; k < K; ++k) {
      double flux = m.stiff[k] * (w[k] - w[k + 1]);
      if (k > 0) flux += m.stiff[k - 1] * (w[k] - w[k - 1]);
      grad[k] = -(flux - m.vol[k] * W.eval_from_well(w[k], 1));
      diag[k] = m.stiff[k] + (k > 0 ? m.stiff[k - 1] : 0.0) + m.vol[k] * W.eval_from_well(w[k], 2);
    }
    solve_sym_tridiagonal(diag, off, grad);
    double t = 1.0;
    bool accepted = false;
    double step = 0.0;
    for (; t >= 1.0 / 1024.0; t *= 0.5) {
      trial = w;
      for (int k = 0; k < K; ++k) trial[k] = w[k] + t * grad[k];
      const double r_try = residual_max(m, W, trial);
      if (r_try < res || r_try <= kNewtonTolerance) {
        w.swap(trial);
        res = r_try;
        accepted = true;
        for (int k = 0; k < K; ++k) step = std::max(step, std::abs(t * grad[k]));
        break;
      }
    }
    if (!accepted) {
      if (res <= floor_tol) {
        if (res > kNewtonTolerance) sol.notes.push_back("Newton reached the round-off floor");
        break;
      }
      std::ostringstream os;
      os << "radial Newton stagnated at R = " << P.R << " after " << newton << " steps";
      throw NumericError(os.str(), res);
    }
    if (res > kNewtonTolerance && res <= floor_tol && step <= 1e-14 * wb) {
      sol.notes.push_back("Newton reached the round-off floor");
      break;
    }
  }
  sol.newton_iterations = newton;
  if (res > floor_tol) {
    std::ostringstream os;
    os << "radial Newton did not converge at R = " << P.R;
    throw NumericError(os.str(), res);
  }
  for (int k = 0; k < K; ++k) {
    if (w[k] < 0.0) w[k] = 0.0;
    if (w[k] > w_max) w[k] = w_max;
  }
  sol.residual = residual_max(m, W, w);

  std::vector<double> constant(K + 1, wb);
  sol.trivial_energy = radial_energy(m, W, constant);
  sol.energy = radial_energy(m, W, w);
  double spread = 0.0;
  for (int k = 0; k <= K; ++k) spread = std::max(spread, std::abs(w[k] - wb));
  if (spread <= 1e-6 * std::max(1.0, wb) || sol.energy >= sol.trivial_energy) {
    sol.trivial = true;
    w = constant;
    sol.energy = sol.trivial_energy;
    sol.residual = std::abs(W.dW(b));
  }

  sol.deviation = w;
  sol.u.resize(K + 1);
  sol.uprime.assign(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) sol.u[k] = mu - w[k];
  for (int k = 1; k < K; ++k) sol.uprime[k] = -(w[k + 1] - w[k - 1]) / (2.0 * m.h);
  sol.uprime[K] = -(3.0 * w[K] - 4.0 * w[K - 1] + w[K - 2]) / (2.0 * m.h);
  sol.flux = std::abs(sol.uprime[K]);
  return sol;
}

std::pair<double, double> RadialSolution::deviation_and_slope(double r) const {
  require(r >= 0.0 && r <= mesh.R * (1 + 1e-12), ErrorKind::domain,
          "radial solution: r outside [0, R]");
  const int K = mesh.K;
  const double h = mesh.h;
  int j = static_cast<int>(std::floor(r / h)) - 1;
  j = std::min(j, K - 3);
  double y[4];
  for (int i = 0; i < 4; ++i) {
    const int idx = std::abs(j + i);  // even reflection through r = 0
    y[i] = deviation[idx];
  }
  return cubic(y, r / h - j, h);
}

std::string RadialSolution::to_csv() const {
  CsvWriter csv({"r", "u", "uprime"});
  for (int k = 0; k <= mesh.K; ++k) csv.row({mesh.r[k], u[k], uprime[k]});
  return csv.str();
}

nlohmann::json RadialSolution::summary_json() const {
  return {{"n", problem.n},
          {"R", problem.R},
          {"h", mesh.h},
          {"boundary_value", problem.boundary_value},
          {"potential", problem.potential.to_json()},
          {"u0", u[0]},
          {"mu_minus_u0", deviation[0]},
          {"flux", flux},
          {"energy", energy},
          {"trivial_energy", trivial_energy},
          {"residual", residual},
          {"residual_tolerance", kNewtonTolerance},
          {"trivial", trivial},
          {"flow_iterations", flow_iterations},
          {"newton_iterations", newton_iterations},
          {"notes", notes}};
}

RadialDiagnostics diagnostics(const RadialSolution& sol, double epsilon) {
  require(!sol.trivial, ErrorKind::undefined, "diagnostics: the solution is trivial");
  const Potential& W = sol.problem.potential;
  const double mu = W.mu();
  const double b = sol.problem.boundary_value;
  require(epsilon > 0.0 && epsilon < mu - b, ErrorKind::domain,
          "diagnostics: epsilon must lie in (0, mu - boundary_value)");
  const RadialMesh& m = sol.mesh;
  const int K = m.K;
  const auto& w = sol.deviation;
  RadialDiagnostics d;
  d.epsilon = epsilon;

  // Radius of the plateau ball {u >= mu - eps}, crossing interpolated in w.
  double crossing = m.R;
  for (int k = 0; k <= K; ++k) {
    if (w[k] > epsilon) {
      crossing = k == 0 ? 0.0 : m.r[k - 1] + m.h * (epsilon - w[k - 1]) / (w[k] - w[k - 1]);
      break;
    }
  }
  d.plateau_width = crossing;
  d.flux = sol.flux;
  d.flux_sq_gap = std::abs(sol.flux * sol.flux - 2.0 * W.W(b));

  d.modica_margin = std::numeric_limits<double>::infinity();
  for (int k = 1; k < K; ++k) {
    const double Wu = W.eval_from_well(w[k], 0);
    const double margin = Wu - 0.5 * sol.uprime[k] * sol.uprime[k];
    if (margin < d.modica_margin) {
      d.modica_margin = margin;
      d.modica_margin_relative = Wu > 0.0 ? margin / Wu : 0.0;
    }
  }

  // Cumulative energy on B_r by the trapezoid rule.
  std::vector<double> density(K + 1), cumulative(K + 1, 0.0);
  for (int k = 0; k <= K; ++k) {
    const double e = 0.5 * sol.uprime[k] * sol.uprime[k] + W.eval_from_well(w[k], 0);
    density[k] = m.sphere_area * std::pow(m.r[k], m.n - 1) * e;
    if (m.n == 1) density[k] = m.sphere_area * e;
  }
  for (int k = 1; k <= K; ++k)
    cumulative[k] = cumulative[k - 1] + 0.5 * m.h * (density[k] + density[k - 1]);

  const int stride = std::max(1, K / 200);
  for (int k = stride; k <= K; k += stride) d.sub_r.push_back(m.r[k]);
  if (d.sub_r.back() != m.R) d.sub_r.push_back(m.R);
  double scale = 0.0;
  for (double r : d.sub_r) {
    const int k = static_cast<int>(std::lround(r / m.h));
    const double E = cumulative[k] / std::pow(r, m.n - 1);
    d.monotonicity_seq.push_back(E);
    scale = std::max(scale, std::abs(E));
    // min of W over [0, u(r)] (or [u(r), 0] below zero)
    const double u = sol.u[k];
    double wmin = W.eval_from_well(w[k], 0);
    constexpr int samples = 400;
    for (int i = 0; i < samples; ++i) wmin = std::min(wmin, W.W(u * i / samples));
    d.caffarelli_seq.push_back((m.R - r) * wmin);
  }
  d.monotonicity_slack = 5.0 * m.h * scale;
  d.monotonicity_worst_drop = 0.0;
  for (std::size_t i = 1; i < d.monotonicity_seq.size(); ++i)
    d.monotonicity_worst_drop =
        std::max(d.monotonicity_worst_drop, d.monotonicity_seq[i - 1] - d.monotonicity_seq[i]);
  d.monotonicity_ok = d.monotonicity_worst_drop <= d.monotonicity_slack;

  d.center_slope_bound = -W.eval_from_well(w[0], 1) * m.R * m.R;
  d.energy_ratio = sol.energy / std::pow(m.R, m.n - 1);
  return d;
}

nlohmann::json RadialDiagnostics::to_json() const {
  return {{"epsilon", epsilon},
          {"plateau_width", plateau_width},
          {"flux", flux},
          {"flux_sq_gap", flux_sq_gap},
          {"modica_margin", modica_margin},
          {"modica_margin_relative", modica_margin_relative},
          {"monotonicity", {{"r", sub_r}, {"values", monotonicity_seq}, {"ok", monotonicity_ok},
                            {"worst_drop", monotonicity_worst_drop}, {"slack", monotonicity_slack}}},
          {"caffarelli_seq", caffarelli_seq},
          {"center_slope_bound", center_slope_bound},
          {"energy_ratio", energy_ratio}};
}

std::vector<SweepRow> sweep_R(const RadialProblem& tmpl, const std::vector<double>& R_list,
                              const SweepOptions& opt) {
  require(!R_list.empty(), ErrorKind::domain, "sweep: empty R list");
  for (std::size_t i = 1; i < R_list.size(); ++i)
    require(R_list[i] > R_list[i - 1], ErrorKind::domain, "sweep: R list must be increasing");
  const Potential& W = tmpl.potential;
  std::optional<ProfileU> profile;
  try {
    profile = compute_profile(W, W.mu() * (1.0 - 1e-9), 200, tmpl.boundary_value);
  } catch (const Error&) {
    profile.reset();
  }

  std::vector<SweepRow> rows(R_list.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.R = R_list[i];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    row.flux = row.u0 = row.w0 = row.plateau_width = row.energy_ratio = row.decay_rate =
        row.profile_gap = nan;
    try {
      RadialProblem p = tmpl;
      p.R = R_list[i];
      RadialSolution s = solve_radial_minimizer(p);
      row.flux = s.flux;
      row.u0 = s.u[0];
      row.w0 = s.deviation[0];
      if (s.trivial) {
        row.status = "trivial";
      } else {
        const RadialDiagnostics d = diagnostics(s, opt.epsilon);
        row.plateau_width = d.plateau_width;
        row.energy_ratio = d.energy_ratio;
        std::vector<double> dist(s.mesh.K + 1);
        for (int k = 0; k <= s.mesh.K; ++k) dist[k] = s.mesh.R - s.mesh.r[k];
        const double hi = std::min(s.mesh.R, std::max(opt.fit_lo + 1.0, 0.5 * s.mesh.R));
        try {
          row.decay_rate = fit_decay(dist, s.deviation, opt.fit_lo, hi).rate;
        } catch (const Error&) {
          row.decay_rate = nan;
        }
        if (profile) {
          double gap = 0.0;
          for (int k = s.mesh.K; k >= 0 && dist[k] <= opt.profile_window + 1e-12; --k)
            gap = std::max(gap, std::abs(profile->deviation_at(dist[k]) - s.deviation[k]));
          row.profile_gap = gap;
        }
      }
      if (opt.keep_solutions) row.solution = std::move(s);
    } catch (const Error& e) {
      row.status = std::string("failed:") + to_string(e.kind());
    }
  });
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  CsvWriter csv({"R", "flux", "u0", "plateau_width", "energy_ratio", "decay_rate", "profile_gap",
                 "status"});
  for (const auto& r : rows) {
    csv.row_text({format_number(r.R), format_number(r.flux), format_number(r.u0),
                  format_number(r.plateau_width), format_number(r.energy_ratio),
                  format_number(r.decay_rate), format_number(r.profile_gap), r.status});
  }
  return csv.str();
}

nlohmann::json OrderReport::to_json() const {
  return {{"min_gap", min_gap}, {"barrier_violation", barrier_violation}};
}

OrderReport compare_nested(const RadialSolution& small, const RadialSolution& large) {
  const auto& ps = small.problem;
  const auto& pl = large.problem;
  require(ps.n == pl.n, ErrorKind::domain, "compare_nested: dimensions differ");
  require(ps.boundary_value == pl.boundary_value, ErrorKind::domain,
          "compare_nested: boundary values differ");
  require(ps.potential.to_json() == pl.potential.to_json(), ErrorKind::domain,
          "compare_nested: potentials differ");
  require(small.mesh.R <= large.mesh.R, ErrorKind::domain, "compare_nested: need R1 <= R2");
  const double ratio = small.mesh.h / large.mesh.h;
  require(std::abs(ratio - std::round(ratio)) <= 1e-9 * ratio && std::round(ratio) >= 1,
          ErrorKind::domain, "compare_nested: meshes are not commensurate");

  OrderReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= small.mesh.K; ++k) {
    const double wl = large.deviation_and_slope(small.mesh.r[k]).first;
    rep.min_gap = std::min(rep.min_gap, small.deviation[k] - wl);
  }
  const Potential& W = pl.potential;
  const ProfileU U = compute_profile(W, W.mu() * (1.0 - 1e-9), 200, pl.boundary_value);
  rep.barrier_violation = -std::numeric_limits<double>::infinity();
  for (int k = 0; k <= large.mesh.K; ++k) {
    const double s = large.mesh.R - large.mesh.r[k];
    rep.barrier_violation =
        std::max(rep.barrier_violation, U.deviation_at(std::max(0.0, s)) - large.deviation[k]);
  }
  return rep;
}

std::optional<double> unit_ball_lambda1(int n) {
  switch (n) {
    case 1: return std::numbers::pi * std::numbers::pi / 4.0;
    case 2: return 2.404825557695773 * 2.404825557695773;  // first zero of J0, squared
    case 3: return std::numbers::pi * std::numbers::pi;
    default: return std::nullopt;
  }
}

nlohmann::json CriticalRadius::to_json() const {
  nlohmann::json j = {{"numeric", numeric}, {"bracket", {lo, hi}}, {"solves", solves}};
  j["analytic"] = std::isfinite(analytic) ? nlohmann::json(analytic) : nlohmann::json(nullptr);
  return j;
}

CriticalRadius critical_radius(const Potential& W, int n, double R_lo, double R_hi, double tol) {
  require(n >= 1, ErrorKind::domain, "critical_radius: n must be >= 1");
  require(std::abs(W.dW(0.0)) <= 1e-10 && W.d2W(0.0) < 0.0, ErrorKind::domain,
          "critical_radius: requires W'(0) = 0 and W''(0) < 0");
  require(R_lo > 0.0 && R_hi > R_lo, ErrorKind::domain, "critical_radius: need 0 < R_lo < R_hi");
  require(tol > 0.0, ErrorKind::domain, "critical_radius: tol must be positive");
  CriticalRadius cr;
  const auto lambda = unit_ball_lambda1(n);
  cr.analytic = lambda ? std::sqrt(*lambda / -W.d2W(0.0)) : std::numeric_limits<double>::quiet_NaN();
  auto trivial = [&](double R) {
    RadialProblem p;
    p.n = n;
    p.R = R;
    p.potential = W;
    ++cr.solves;
    return solve_radial_minimizer(p).trivial;
  };
  double lo = R_lo, hi = R_hi;
  const bool t_lo = trivial(lo), t_hi = trivial(hi);
  require(t_lo && !t_hi, ErrorKind::bracket,
          "critical_radius: bracket ends do not straddle the trivial/nontrivial transition");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (trivial(mid) ? lo : hi) = mid;
  }
  cr.lo = lo;
  cr.hi = hi;
  cr.numeric = 0.5 * (lo + hi);
  return cr;
}

double torsion_center(int n, double h) {
  require(n >= 1, ErrorKind::domain, "torsion: n must be >= 1");
  const RadialMesh m = make_radial_mesh(n, 1.0, h);
  const int K = m.K;
  std::vector<double> diag(K), off(K - 1), rhs(K);
  for (int k = 0; k < K; ++k) {
    diag[k] = m.stiff[k] + (k > 0 ? m.stiff[k - 1] : 0.0);
    if (k + 1 < K) off[k] = -m.stiff[k];
    rhs[k] = m.vol[k];
  }
  solve_sym_tridiagonal(diag, off, rhs);
  return rhs[0];
}

nlohmann::json CenterBoundReport::to_json() const {
  return {{"slope", slope},
          {"intercept", intercept},
          {"r2", r2},
          {"R", R},
          {"center_slope", center_slope},
          {"excluded_R", excluded},
          {"decreasing", decreasing},
          {"torsion_z0", torsion_z0},
          {"n", n}};
}

CenterBoundReport center_bound_scan(const std::vector<SweepRow>& rows, const Potential& W, int n) {
  CenterBoundReport rep;
  rep.n = n;
  std::vector<double> lx, ly;
  for (const auto& row : rows) {
    if (row.status != "ok" || !std::isfinite(row.w0)) {
      rep.excluded.push_back(row.R);
      continue;
    }
    const double c = -W.eval_from_well(row.w0, 1);
    if (!(c > 0.0)) {
      rep.excluded.push_back(row.R);
      continue;
    }
    rep.R.push_back(row.R);
    rep.center_slope.push_back(c);
    lx.push_back(std::log(row.R));
    ly.push_back(std::log(c));
  }
  const LineFit f = fit_line(lx, ly);
  rep.slope = f.slope;
  rep.intercept = f.intercept;
  rep.r2 = f.r2;
  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.center_slope.size(); ++i)
    if (!(rep.center_slope[i] < rep.center_slope[i - 1])) rep.decreasing = false;
  rep.torsion_z0 = torsion_center(n);
  return rep;
}

}  // namespace eland
