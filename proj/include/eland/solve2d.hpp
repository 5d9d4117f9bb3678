#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eland/grid2d.hpp"
#include "eland/potential.hpp"
#include "eland/profile.hpp"
#include "eland/radial.hpp"

namespace eland {

/// Discrete energy h^2 [sum_edges c_e/2 |grad|^2 + sum_k m_k W(u_k)] of a
/// deviation field (mu - u, with mu on Dirichlet nodes).
double energy_2d(const Domain2D& domain, const Potential& potential,
                 const std::vector<double>& deviation);

/// Max over unknowns of |Delta_h u - W'(u)|.
double residual_2d(const Domain2D& domain, const Potential& potential,
                   const std::vector<double>& deviation);

/// u = mu min(1, dist): the plateau competitor with a unit-width ramp.
std::vector<double> plateau_competitor(const Domain2D& domain, double mu);

/// u = U(dist), the connecting profile laid along the distance field.
std::vector<double> profile_guess(const Domain2D& domain, const Potential& potential);

/// u_R(|x - P|) inside B_R(P), 0 elsewhere. Requires dist(P) > R.
GridField2D lower_solution_field(DomainPtr domain, const RadialSolution& radial, double px,
                                 double py);

/// The ball field re-solved on its own grid support, so that it satisfies
/// the discrete lower-solution inequality up to the Newton tolerance (the
/// interpolated radial values miss it by the O(h^2) truncation error).
GridField2D discrete_ball_field(DomainPtr domain, const Potential& potential,
                                const RadialSolution& radial, double px, double py);

/// Newton polish of a near-solution on all unknowns.
GridField2D newton_polish_2d(const GridField2D& field, const Potential& potential,
                             double tol = 1e-11);

struct MonotoneOptions {
  double cg_tol = 1e-10;
  double increment_tol = 1e-8;
  double residual_tol = 1e-8;
  int max_iterations = 20000;
  bool compute_maximal = true;
};

struct MonotoneReport {
  double lambda = 0.0;
  int iterations_minimal = 0;
  int iterations_maximal = 0;
  int cg_iterations = 0;
  double residual_minimal = 0.0;
  double residual_maximal = 0.0;
  double final_increment = 0.0;
  double order_noise = 0.0;        // largest wrong-signed increment absorbed as CG noise
  bool lower_repaired = false;     // lower field replaced by its discrete ball solution
  double lower_repair_change = 0.0;
  double lower_gap = 0.0;          // min over nodes of minimal - lower
  std::optional<double> max_minus_min;  // min over nodes of maximal - minimal
  double wall_time = 0.0;
  nlohmann::json to_json() const;
};

struct MonotoneResult {
  GridField2D minimal;
  std::optional<GridField2D> maximal;
  MonotoneReport report;
};

/// Sattinger iteration (-Delta_h + Lambda) u_{k+1} = Lambda u_k - W'(u_k) from
/// the lower field (minimal solution) and, optionally, from the constant mu
/// (maximal solution).
MonotoneResult solve_monotone(DomainPtr domain, const Potential& potential,
                              const GridField2D& lower, const MonotoneOptions& options = {});

struct MinimizerOptions {
  double flow_tol = 1e-4;
  int max_flow = 20000;
  double newton_tol = 1e-10;
  int max_newton = 50;
  double cg_tol = 1e-10;
};

/// Projected semi-implicit descent on the discrete energy from the profile
/// guess (or the given deviation), Newton polish, then an energy comparison
/// with the zero field and the plateau competitor.
GridField2D solve_minimizer_2d(DomainPtr domain, const Potential& potential,
                               const MinimizerOptions& options = {},
                               const std::vector<double>* initial_deviation = nullptr);

struct SeqSample {
  double dist = 0.0;
  double value = 0.0;
};

struct Solve2DReport {
  double min_value = 0.0;
  double max_value = 0.0;
  bool bounds_ok = false;          // 0 < u < mu on the unknowns
  double epsilon = 0.0;
  double D = 0.0;
  double Dprime = 0.0;
  double plateau_fraction = 0.0;   // share of unknowns with u >= mu - eps
  double r_hat_prime = 0.0;
  bool plateau_ok = false;         // u >= mu - eps on Omega_R + B_{R-D} at R = r_hat_prime
  std::size_t bad_nodes_checked = 0;
  std::optional<DecayFit> exp_fit;  // upper envelope of mu - u against dist
  std::optional<DecayFit> alg_fit;
  std::vector<SeqSample> cafathm_seq;  // dist^2 (-W'(u)), binned maxima
  std::vector<SeqSample> caffa_seq;    // dist min_{[0,u]} W, binned maxima
  int iterations = 0;
  double wall_time = 0.0;
  double residual = 0.0;
  std::vector<std::string> notes;
  nlohmann::json to_json() const;
};

Solve2DReport verify_main_theorem(const GridField2D& u, const Potential& potential,
                                  double epsilon, double D);

/// Max over nodes of |a - b| (u values).
double sup_difference(const GridField2D& a, const GridField2D& b);

}  // namespace eland
