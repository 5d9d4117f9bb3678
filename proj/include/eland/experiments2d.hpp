#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eland/grid2d.hpp"
#include "eland/potential.hpp"
#include "eland/solve2d.hpp"

namespace eland {

// ---- boundary layer under Delta u = lambda^2 W'(u) ----

struct LayerRow {
  double lambda = 0.0;
  double h = 0.0;               // mesh in the original variables
  std::size_t nodes = 0;
  double width = 0.0;           // inf{d : u >= mu - eps whenever dist >= d}
  double width_lambda = 0.0;    // width * lambda
  double width_1d_lambda = 0.0; // same for the interval [0, 1]
  double residual = 0.0;
  std::string status = "ok";
};

struct LayerTable {
  double epsilon = 0.0;
  double Dprime = 0.0;
  std::vector<LayerRow> rows;
  bool width_decreasing = false;
  nlohmann::json to_json() const;
  std::string to_csv() const;
};

struct LayerOptions {
  double max_h_scaled = 0.2;     // lambda h
  std::size_t node_budget = 4000000;
  bool include_2d = true;
  bool include_1d = true;
};

/// Solves each lambda in stretched variables x' = lambda x (the domain grows
/// by lambda, the equation becomes Delta u = W'(u)), by the minimiser route.
LayerTable layer_experiment(const nlohmann::json& domain_spec, const Potential& potential,
                            const std::vector<double>& lambdas, double epsilon,
                            const LayerOptions& options = {});

/// Layer width of a 2-D field: the largest dist at which mu - u crosses eps
/// (linear interpolation along grid edges).
double layer_width(const GridField2D& field, double epsilon);

/// Multiplies every length of a domain spec by factor and sets h.
nlohmann::json scale_domain_spec(const nlohmann::json& spec, double factor, double h);

// ---- ordered solutions for a multi-well potential ----

struct MultiwellResult {
  std::vector<GridField2D> solutions;  // u_1 < u_2 < ...
  std::vector<double> mu;
  std::vector<double> max_value;
  std::vector<double> plateau_fraction;  // share of nodes with u_i >= mu_i - eps
  std::vector<double> min_gap;           // min over unknowns of u_i - u_{i-1} (i >= 2)
  std::vector<MonotoneReport> reports;
  std::optional<int> failure_index;      // 1-based
  std::string failure;
  double epsilon = 0.0;
  bool ordered = false;
  bool plateaus_ok = false;
  nlohmann::json to_json() const;
};

struct MultiwellOptions {
  double ball_fraction = 0.8;  // ball radius relative to the deepest dist
  MonotoneOptions monotone{};
};

MultiwellResult multiwell_ordered(DomainPtr domain, const Potential& potential, double epsilon,
                                  const MultiwellOptions& options = {});

// ---- saddle solution on the quadrant with odd reflection ----

struct SaddleResult {
  GridField2D field;  // quadrant values; CSV output reflects them
  std::vector<double> x2;
  std::vector<double> flux;  // du/dx1 (0, x2)
  double flux_probe_x2 = 0.0;
  double flux_probe = 0.0;
  double min_inner = 0.0;    // min of u over [h, L - h]^2
  bool positive = false;
  double axis_jump = 0.0;
  nlohmann::json to_json() const;
  std::string flux_csv() const;
};

SaddleResult saddle_demo(const Potential& potential, double L, double h = 0.1,
                         double probe_x2 = 25.0);

}  // namespace eland
