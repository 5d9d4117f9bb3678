#include "eland/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eland/error.hpp"
#include "eland/io.hpp"
#include "eland/parallel.hpp"
#include "eland/tridiag.hpp"

namespace eland {

namespace {

struct Operator {
  std::vector<double> diag, off, mass;
};

// Stiffness plus V W''(u) on the free nodes 0..K-1.
Operator linearisation(const RadialSolution& s) {
  const RadialMesh& m = s.mesh;
  const Potential& W = s.problem.potential;
  Operator op;
  op.diag.resize(m.K);
  op.off.resize(m.K - 1);
  op.mass.assign(m.vol.begin(), m.vol.begin() + m.K);
  for (int k = 0; k < m.K; ++k) {
    op.diag[k] = m.stiff[k] + (k > 0 ? m.stiff[k - 1] : 0.0) +
                 m.vol[k] * W.eval_from_well(s.deviation[k], 2);
    if (k + 1 < m.K) op.off[k] = -m.stiff[k];
  }
  return op;
}

double quad_form(const Operator& op, const std::vector<double>& x) {
  double q = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    q += op.diag[k] * x[k] * x[k];
    if (k + 1 < x.size()) q += 2.0 * op.off[k] * x[k] * x[k + 1];
  }
  return q;
}

double mass_form(const Operator& op, const std::vector<double>& x) {
  double q = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) q += op.mass[k] * x[k] * x[k];
  return q;
}

}  // namespace

EigenResult principal_eigenpair(const RadialSolution& s, double tol, int max_iterations) {
  require(!s.trivial, ErrorKind::undefined, "principal_eigenpair: the solution is trivial");
  const Potential& W = s.problem.potential;
  const int K = s.mesh.K;
  const Operator op = linearisation(s);
  EigenResult res;
  const double bound = W.max_abs_d2W(std::min(0.0, s.problem.boundary_value), W.mu());
  res.lower_bound = -bound;
  res.shift = -bound - 1.0;

  std::vector<double> shifted(op.diag);
  for (int k = 0; k < K; ++k) shifted[k] -= res.shift * op.mass[k];

  std::vector<double> x(K, 1.0), y(K);
  double mu = quad_form(op, x) / mass_form(op, x);
  double increment = std::numeric_limits<double>::infinity();
  auto step = [&] {
    for (int k = 0; k < K; ++k) y[k] = op.mass[k] * x[k];
    solve_sym_tridiagonal(shifted, op.off, y);
    const double norm = std::sqrt(mass_form(op, y));
    for (int k = 0; k < K; ++k) x[k] = y[k] / norm;
    const double next = quad_form(op, x);  // x is mass-normalised
    const double change = std::abs(next - mu);
    mu = next;
    return change;
  };
  int it = 0;
  for (; it < max_iterations && increment >= tol; ++it) increment = step();
  if (increment >= tol) {
    std::ostringstream os;
    os << "inverse iteration did not converge in " << max_iterations << " steps";
    throw NumericError(os.str(), increment);
  }
  res.extra_step_change = step();
  res.iterations = it + 1;
  res.mu_R = mu;

  double peak = 0.0;
  for (double v : x) peak = std::abs(v) > std::abs(peak) ? v : peak;
  res.phi.resize(K + 1);
  for (int k = 0; k < K; ++k) res.phi[k] = x[k] / peak;
  res.phi[K] = 0.0;
  res.r = s.mesh.r;
  std::vector<double> inner(res.phi.begin(), res.phi.begin() + K);
  res.rayleigh = quad_form(op, inner) / mass_form(op, inner);
  return res;
}

std::string EigenResult::to_csv() const {
  CsvWriter csv({"r", "phi"});
  for (std::size_t k = 0; k < r.size(); ++k) csv.row({r[k], phi[k]});
  return csv.str();
}

nlohmann::json EigenResult::to_json() const {
  return {{"mu_R", mu_R},
          {"rayleigh", rayleigh},
          {"shift", shift},
          {"lower_bound", lower_bound},
          {"extra_step_change", extra_step_change},
          {"iterations", iterations}};
}

double eigenfunction_profile_gap(const EigenResult& eig, const RadialSolution& s, double S) {
  const Potential& W = s.problem.potential;
  const ProfileU U = compute_profile(W, W.mu() * (1.0 - 1e-9), 200, s.problem.boundary_value);
  // U' = sqrt(2 W(U)) is largest where W is, on the profile's range.
  double peak = 0.0;
  for (std::size_t i = 0; i < U.s().size(); ++i)
    peak = std::max(peak, std::sqrt(2.0 * W.eval_from_well(U.deviation()[i], 0)));
  double gap = 0.0;
  const RadialMesh& m = s.mesh;
  for (int k = m.K; k >= 0; --k) {
    const double dist = m.R - m.r[k];
    if (dist > S + 1e-12) break;
    gap = std::max(gap, std::abs(eig.phi[k] - U.slope(std::max(0.0, dist)) / peak));
  }
  return gap;
}

nlohmann::json ZetaResult::to_json() const {
  return {{"residual", residual},
          {"log10_range", log10_range},
          {"rescalings", rescalings},
          {"range_exceeded", range_exceeded}};
}

ZetaResult zeta_identity_residual(const RadialSolution& s) {
  require(!s.trivial, ErrorKind::undefined, "zeta identity: the solution is trivial");
  const Potential& W = s.problem.potential;
  const RadialMesh& m = s.mesh;
  const int n = m.n;

  struct Local {
    double d1, d2, slope;  // W'(u), W''(u), u'
  };
  auto at = [&](double r) {
    const auto [w, dw] = s.deviation_and_slope(std::min(r, m.R));
    return Local{W.eval_from_well(w, 1), W.eval_from_well(w, 2), -dw};
  };
  // state: phi, phi', int_0^r W'(u) phi s^{n-1} ds
  using State = std::array<double, 3>;
  auto rhs = [&](double r, const State& y) {
    const Local L = at(r);
    const double curvature = r > 0.0 ? (n - 1) / r * y[1] : 0.0;
    const double second = r > 0.0 ? L.d2 * y[0] - curvature : L.d2 * y[0] / n;
    return State{y[1], second, L.d1 * y[0] * std::pow(r, n - 1)};
  };
  auto zeta = [&](double r, const State& y) {
    const Local L = at(r);
    return std::pow(r, n) * (L.slope * y[1] - L.d1 * y[0]) +
           (n - 2) * (n == 1 ? 1.0 : std::pow(r, n - 1)) * L.slope * y[0];
  };

  ZetaResult out;
  State y{1.0, 0.0, 0.0};
  const double zeta0 = zeta(0.0, y);
  double zeta0_scaled = zeta0;
  double worst = 0.0, peak = std::abs(zeta0);
  const double h = m.h;
  for (int k = 0; k < m.K; ++k) {
    const double r = m.r[k];
    const State k1 = rhs(r, y);
    State t;
    for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k1[i];
    const State k2 = rhs(r + 0.5 * h, t);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + 0.5 * h * k2[i];
    const State k3 = rhs(r + 0.5 * h, t);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * k3[i];
    const State k4 = rhs(r + h, t);
    for (int i = 0; i < 3; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);

    const double z = zeta(m.r[k + 1], y);
    peak = std::max(peak, std::abs(z));
    worst = std::max(worst, std::abs(z - zeta0_scaled + 2.0 * y[2]));
    if (std::abs(y[0]) > 1e100) {
      // rescale and continue; the identity is linear in phi
      constexpr double f = 1e-100;
      for (double& v : y) v *= f;
      zeta0_scaled *= f;
      worst *= f;
      peak *= f;
      out.log10_range += 100.0;
      ++out.rescalings;
    }
  }
  out.log10_range += std::log10(std::max(std::abs(y[0]), 1e-300));
  out.range_exceeded = out.log10_range > 300.0;
  out.residual = peak > 0.0 ? worst / peak : 0.0;
  return out;
}

nlohmann::json StabilityReport::to_json() const {
  nlohmann::json r = nlohmann::json::array();
  for (const auto& row : rows) r.push_back({{"R", row.R}, {"mu_R", row.mu_R}, {"status", row.status}});
  return {{"rows", r},
          {"all_positive", all_positive},
          {"positive_from", positive_from},
          {"decreasing_observed", decreasing},
          {"note", "the decreasing trend is an observation, not an asserted theorem"}};
}

StabilityReport stability_sweep(const std::vector<SweepRow>& sweep) {
  StabilityReport rep;
  rep.rows.resize(sweep.size());
  parallel_for(sweep.size(), [&](std::size_t i) {
    StabilityRow& row = rep.rows[i];
    row.R = sweep[i].R;
    row.mu_R = std::numeric_limits<double>::quiet_NaN();
    if (!sweep[i].solution || sweep[i].status != "ok") {
      row.status = sweep[i].solution ? sweep[i].status : "failed:no-solution";
      return;
    }
    try {
      row.mu_R = principal_eigenpair(*sweep[i].solution).mu_R;
    } catch (const Error& e) {
      row.status = std::string("failed:") + to_string(e.kind());
    }
  });
  rep.all_positive = !rep.rows.empty();
  rep.decreasing = true;
  rep.positive_from = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    if (!(row.mu_R > 0.0)) {
      rep.all_positive = false;
      rep.positive_from = std::numeric_limits<double>::quiet_NaN();
    } else if (std::isnan(rep.positive_from)) {
      rep.positive_from = row.R;
    }
    if (i > 0 && !(row.mu_R < rep.rows[i - 1].mu_R)) rep.decreasing = false;
  }
  return rep;
}

}  // namespace eland
