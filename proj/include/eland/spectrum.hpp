#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eland/radial.hpp"

namespace eland {

/// Principal Dirichlet eigenpair of -phi'' - (n-1)/r phi' + W''(u_R) phi on
/// B_R, discretised with the same finite-volume weights as the solver.
struct EigenResult {
  double mu_R = 0.0;
  std::vector<double> r;
  std::vector<double> phi;  // sup-normalised, positive inside, phi(R) = 0
  double rayleigh = 0.0;    // discrete Rayleigh quotient of phi
  double shift = 0.0;
  double lower_bound = 0.0;  // -max |W''| over [0, mu]
  double extra_step_change = 0.0;
  int iterations = 0;

  std::string to_csv() const;
  nlohmann::json to_json() const;
};

EigenResult principal_eigenpair(const RadialSolution& solution, double tol = 1e-10,
                                int max_iterations = 100000);

/// max_{s <= S} |phi(R - s) - U'(s) / max U'|.
double eigenfunction_profile_gap(const EigenResult& eig, const RadialSolution& solution,
                                 double S = 5.0);

struct ZetaResult {
  double residual = 0.0;  // max |zeta(r) - zeta(0) + 2 int W'(u) phi s^{n-1}| / max |zeta|
  double log10_range = 0.0;
  int rescalings = 0;
  bool range_exceeded = false;  // dynamic range of phi beyond 1e300
  nlohmann::json to_json() const;
};

/// Integrates the homogeneous linearisation phi(0) = 1, phi'(0) = 0 along
/// the solution (RK4 on the solution grid, cubic reconstruction of u) and
/// checks the first-order identity satisfied by
/// zeta = r^n [u' phi' - W'(u) phi] + (n - 2) r^{n-1} u' phi.
ZetaResult zeta_identity_residual(const RadialSolution& solution);

struct StabilityRow {
  double R = 0.0;
  double mu_R = 0.0;
  std::string status = "ok";
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  bool all_positive = false;
  double positive_from = 0.0;  // smallest R from which every mu_R > 0
  bool decreasing = false;     // observed trend only
  nlohmann::json to_json() const;
};

/// Principal eigenvalues along a sweep that kept its solutions.
StabilityReport stability_sweep(const std::vector<SweepRow>& rows);

}  // namespace eland
