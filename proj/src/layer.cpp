#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eland/error.hpp"
#include "eland/experiments2d.hpp"
#include "eland/io.hpp"
#include "eland/parallel.hpp"
#include "eland/profile.hpp"
#include "eland/radial.hpp"

namespace eland {

namespace {

/// Box sides that h must divide (none for disk unions, whose box is snapped).
std::vector<double> box_sides(const nlohmann::json& spec) {
  const auto shape = spec.at("shape").get<std::string>();
  const auto& p = spec.at("params");
  if (shape == "rectangle") {
    if (p.contains("width")) {
      const double w = p.at("width").get<double>();
      return {w, p.contains("height") ? p.at("height").get<double>() : w};
    }
    return {p.at("x_max").get<double>() - p.at("x_min").get<double>(),
            p.at("y_max").get<double>() - p.at("y_min").get<double>()};
  }
  if (shape == "disk") return {2.0 * p.at("radius").get<double>()};
  if (shape == "annulus") return {2.0 * p.at("r_out").get<double>()};
  if (shape == "square_with_odd_symmetry") return {p.at("L").get<double>()};
  return {};
}

bool is_multiple(double length, double h) {
  const double q = length / h;
  return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, q);
}

}  // namespace

nlohmann::json scale_domain_spec(const nlohmann::json& spec, double factor, double h) {
  require(spec.is_object() && spec.contains("shape"), ErrorKind::usage, "domain spec needs a shape");
  nlohmann::json out = spec;
  out["h"] = h;
  auto& p = out["params"];
  for (auto it = p.begin(); it != p.end(); ++it) {
    if (it.value().is_number()) {
      it.value() = it.value().get<double>() * factor;
    } else if (it.value().is_array()) {
      for (auto& e : it.value()) {
        if (e.is_number()) e = e.get<double>() * factor;
        else if (e.is_array())
          for (auto& q : e) q = q.get<double>() * factor;
      }
    }
  }
  return out;
}

double layer_width(const GridField2D& f, double eps) {
  const Domain2D& d = *f.domain;
  const std::size_t s = d.stride();
  double width = 0.0;
  for (std::size_t k : d.unknowns()) {
    const double wk = f.deviation[k];
    if (wk <= eps) continue;
    double best = d.dist()[k];
    for (std::size_t j : {k - 1, k + 1, k - s, k + s}) {
      if (!d.is_unknown(j)) continue;
      const double wj = f.deviation[j];
      if (wj > eps) continue;
      const double t = (wk - eps) / (wk - wj);
      best = std::max(best, d.dist()[k] + t * (d.dist()[j] - d.dist()[k]));
    }
    width = std::max(width, best);
  }
  return width;
}

nlohmann::json LayerTable::to_json() const {
  auto rows_j = nlohmann::json::array();
  for (const auto& r : rows)
    rows_j.push_back({{"lambda", r.lambda},
                      {"h", r.h},
                      {"nodes", r.nodes},
                      {"width", r.width},
                      {"width_lambda", r.width_lambda},
                      {"width_1d_lambda", r.width_1d_lambda},
                      {"residual", r.residual},
                      {"status", r.status}});
  return {{"epsilon", epsilon}, {"Dprime", Dprime}, {"rows", rows_j}, {"width_decreasing", width_decreasing}};
}

std::string LayerTable::to_csv() const {
  CsvWriter csv({"lambda", "h", "nodes", "width", "width_lambda", "width_1d_lambda", "status"});
  for (const auto& r : rows)
    csv.row_text({format_number(r.lambda), format_number(r.h), std::to_string(r.nodes),
                  format_number(r.width), format_number(r.width_lambda),
                  format_number(r.width_1d_lambda), r.status});
  return csv.str();
}

LayerTable layer_experiment(const nlohmann::json& spec, const Potential& W,
                            const std::vector<double>& lambdas, double eps,
                            const LayerOptions& options) {
  require(!lambdas.empty(), ErrorKind::usage, "layer_experiment: empty lambda list");
  for (double l : lambdas)
    require(std::isfinite(l) && l >= 10.0, ErrorKind::domain, "layer_experiment: lambda must be >= 10");
  require(eps > 0.0 && eps < W.mu(), ErrorKind::domain, "layer_experiment: eps must lie in (0, mu)");
  LayerTable table;
  table.epsilon = eps;
  table.Dprime = compute_Dprime(W, eps);
  table.rows.resize(lambdas.size());

  // Pick the stretched mesh per row before solving so budget errors surface
  // up front.
  std::vector<double> h_scaled(lambdas.size(), 0.0);
  if (options.include_2d) {
    const auto sides = box_sides(spec);
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const double lam = lambdas[i];
      double hs = options.max_h_scaled;
      if (!sides.empty()) {
        const double a = lam * sides[0];
        bool found = false;
        for (long n = static_cast<long>(std::ceil(a / options.max_h_scaled - 1e-9)); n < 1000000; ++n) {
          hs = a / static_cast<double>(n);
          bool all = true;
          for (double b : sides) all = all && is_multiple(lam * b, hs);
          if (all) {
            found = true;
            break;
          }
        }
        require(found, ErrorKind::domain, "layer_experiment: no mesh divides the stretched box");
      }
      double est = 1.0;
      for (double b : sides) est *= lam * b / hs + 1.0;
      if (sides.size() == 1) est *= est;
      if (est > static_cast<double>(options.node_budget)) {
        std::ostringstream os;
        os << "layer_experiment: lambda = " << lam << " needs about " << est
           << " grid nodes (budget " << options.node_budget << "); use a smaller lambda";
        fail(ErrorKind::budget, os.str());
      }
      h_scaled[i] = hs;
    }
  }

  parallel_for(lambdas.size(), [&](std::size_t i) {
    LayerRow& row = table.rows[i];
    row.lambda = lambdas[i];
    try {
      if (options.include_2d) {
        const DomainPtr dom = build_domain(scale_domain_spec(spec, row.lambda, h_scaled[i]));
        row.h = h_scaled[i] / row.lambda;
        row.nodes = dom->unknowns().size();
        require(dom->size() <= options.node_budget * 2, ErrorKind::budget, "layer_experiment: grid over budget");
        const GridField2D f = solve_minimizer_2d(dom, W);
        row.residual = f.residual;
        if (f.trivial) {
          row.status = "trivial";
        } else {
          const double ws = layer_width(f, eps);
          row.width = ws / row.lambda;
          row.width_lambda = ws;
        }
      }
      if (options.include_1d) {
        RadialProblem rp;
        rp.n = 1;
        rp.R = 0.5 * row.lambda;
        rp.potential = W;
        const RadialSolution sol = solve_radial_minimizer(rp);
        if (sol.trivial) {
          row.status = "trivial";
        } else {
          row.width_1d_lambda = sol.R() - diagnostics(sol, eps).plateau_width;
          if (!options.include_2d) {
            row.width_lambda = row.width_1d_lambda;
            row.width = row.width_1d_lambda / row.lambda;
          }
        }
      }
    } catch (const Error& e) {
      row.status = std::string("failed:") + to_string(e.kind());
    }
  });
  std::vector<std::size_t> order(lambdas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lambdas[a] < lambdas[b]; });
  table.width_decreasing = true;
  for (std::size_t i = 1; i < order.size(); ++i)
    if (!(table.rows[order[i]].width < table.rows[order[i - 1]].width)) table.width_decreasing = false;
  return table;
}

}  // namespace eland
