#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eland/potential.hpp"
#include "eland/profile.hpp"

namespace eland {

/// Radial Dirichlet problem Delta u = W'(u) on B_R in R^n, u = boundary_value
/// on the sphere.
struct RadialProblem {
  int n = 2;
  double R = 10.0;
  Potential potential = Potential::double_well();
  double boundary_value = 0.0;
  double h = 0.0;  // 0 selects min(0.01, R / 2000)

  /// Checks the preconditions and returns a copy with h resolved.
  RadialProblem validated() const;
  int nodes() const;  // K, the index of the boundary node
};

/// Finite-volume weights on r_k = k h. The stiffness weight of cell
/// [r_k, r_k+1] is r_{k+1/2}^{n-1} / h and the node weight is the exact
/// shell volume int r^{n-1} dr over the dual cell, so at r = 0 the scheme
/// reduces to 2n (u_1 - u_0) / h^2.
struct RadialMesh {
  int n = 1;
  int K = 0;
  double h = 0.0;
  double R = 0.0;
  double sphere_area = 2.0;   // |S^{n-1}|: 2, 2 pi, 4 pi, ...
  std::vector<double> r;      // K + 1 nodes
  std::vector<double> stiff;  // K cells
  std::vector<double> vol;    // K + 1 nodes
};

RadialMesh make_radial_mesh(int n, double R, double h);

struct RadialSolution {
  RadialProblem problem;
  RadialMesh mesh;
  std::vector<double> u;
  std::vector<double> deviation;  // mu - u, carried without cancellation
  std::vector<double> uprime;
  double flux = 0.0;      // |u'(R)|, one-sided second order
  double energy = 0.0;    // J(u; B_R) with the sphere-area factor
  double trivial_energy = 0.0;
  double residual = 0.0;  // max |Delta_h u - W'(u)| over free nodes
  bool trivial = false;
  int flow_iterations = 0;
  int newton_iterations = 0;
  std::vector<std::string> notes;

  double mu() const { return problem.potential.mu(); }
  double R() const { return mesh.R; }
  /// mu - u and its r-derivative at any r in [0, R] (cubic through the
  /// neighbouring nodes, even reflection at the centre).
  std::pair<double, double> deviation_and_slope(double r) const;
  double value(double r) const { return mu() - deviation_and_slope(r).first; }

  std::string to_csv() const;
  nlohmann::json summary_json() const;
};

/// Energy minimiser by projected semi-implicit gradient flow from the barrier
/// U(R - r), a damped Newton polish, and an energy comparison with the
/// constant boundary value.
RadialSolution solve_radial_minimizer(const RadialProblem& problem);

/// Discrete energy of arbitrary nodal values (u given as deviation mu - u).
double radial_energy(const RadialMesh& mesh, const Potential& potential,
                     const std::vector<double>& deviation);

struct RadialDiagnostics {
  double epsilon = 0.0;
  double plateau_width = 0.0;
  double flux = 0.0;
  double flux_sq_gap = 0.0;
  double modica_margin = 0.0;
  double modica_margin_relative = 0.0;  // margin / W(u) at the worst node
  std::vector<double> sub_r;
  std::vector<double> monotonicity_seq;
  bool monotonicity_ok = false;
  double monotonicity_worst_drop = 0.0;
  double monotonicity_slack = 0.0;
  std::vector<double> caffarelli_seq;
  double center_slope_bound = 0.0;
  double energy_ratio = 0.0;

  nlohmann::json to_json() const;
};

RadialDiagnostics diagnostics(const RadialSolution& solution, double epsilon);

/// Linear-ramp competitor: mu inside B_{R-1}, linear down to the boundary
/// value on the outer unit shell.
std::vector<double> linear_ramp_deviation(const RadialMesh& mesh, const Potential& potential,
                                          double boundary_value);

struct SweepRow {
  double R = 0.0;
  double flux = 0.0;
  double u0 = 0.0;
  double w0 = 0.0;  // mu - u(0)
  double plateau_width = 0.0;
  double energy_ratio = 0.0;
  double decay_rate = 0.0;
  double profile_gap = 0.0;
  std::string status = "ok";
  std::optional<RadialSolution> solution;
};

struct SweepOptions {
  double epsilon = 0.1;
  double profile_window = 5.0;  // S in max_{s <= S} |u_R(R - s) - U(s)|
  double fit_lo = 4.0;          // decay fit on R - r in [fit_lo, max(fit_lo + 1, R / 2)]
  bool keep_solutions = false;
};

/// Independent solves for each R (in parallel); failed rows are marked and
/// the sweep continues.
std::vector<SweepRow> sweep_R(const RadialProblem& tmpl, const std::vector<double>& R_list,
                              const SweepOptions& options = {});
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

struct OrderReport {
  double min_gap = 0.0;             // min over B_R1 of u_R2 - u_R1
  double barrier_violation = 0.0;   // max over [0, R2] of u_R2(R2 - s) - U(s)
  nlohmann::json to_json() const;
};

OrderReport compare_nested(const RadialSolution& small, const RadialSolution& large);

struct CriticalRadius {
  double numeric = 0.0;
  double analytic = 0.0;  // NaN when lambda_1 is unknown for this n
  double lo = 0.0;
  double hi = 0.0;
  int solves = 0;
  nlohmann::json to_json() const;
};

/// First Dirichlet eigenvalue of -Delta on the unit ball for n = 1, 2, 3.
std::optional<double> unit_ball_lambda1(int n);

/// Bisection on the trivial flag down to a bracket of width tol.
CriticalRadius critical_radius(const Potential& potential, int n, double R_lo, double R_hi,
                               double tol = 1e-3);

/// Centre value of the torsion function, Delta z = -1 on B_1, z = 0 on the
/// sphere, from the same radial discretisation.
double torsion_center(int n, double h = 1e-3);

struct CenterBoundReport {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<double> R;
  std::vector<double> center_slope;  // -W'(u(0))
  std::vector<double> excluded;
  bool decreasing = false;
  double torsion_z0 = 0.0;
  int n = 0;
  nlohmann::json to_json() const;
};

CenterBoundReport center_bound_scan(const std::vector<SweepRow>& rows, const Potential& potential,
                                    int n);

}  // namespace eland
