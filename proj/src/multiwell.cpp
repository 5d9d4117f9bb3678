#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eland/error.hpp"
#include "eland/experiments2d.hpp"
#include "eland/radial.hpp"

namespace eland {

nlohmann::json MultiwellResult::to_json() const {
  auto levels = nlohmann::json::array();
  for (std::size_t i = 0; i < solutions.size(); ++i) {
    nlohmann::json l = {{"index", i + 1},
                        {"mu", mu[i]},
                        {"max_value", max_value[i]},
                        {"plateau_fraction", plateau_fraction[i]},
                        {"residual", solutions[i].residual},
                        {"monotone", reports[i].to_json()}};
    if (i > 0) l["min_gap"] = min_gap[i - 1];
    levels.push_back(std::move(l));
  }
  nlohmann::json j = {{"epsilon", epsilon},
                      {"levels", levels},
                      {"ordered", ordered},
                      {"plateaus_ok", plateaus_ok}};
  if (failure_index) {
    j["failure_index"] = *failure_index;
    j["failure"] = failure;
  }
  return j;
}

MultiwellResult multiwell_ordered(DomainPtr domain, const Potential& W, double eps,
                                  const MultiwellOptions& options) {
  require(domain != nullptr, ErrorKind::usage, "multiwell_ordered: no domain");
  require(eps > 0.0, ErrorKind::domain, "multiwell_ordered: eps must be positive");
  const Domain2D& d = *domain;
  const int m = W.kind() == PotentialKind::multi_well ? static_cast<int>(W.wells().size()) : 1;

  // Ball centre: the deepest node.
  std::size_t centre = d.unknowns().front();
  for (std::size_t k : d.unknowns())
    if (d.dist()[k] > d.dist()[centre]) centre = k;
  const double px = d.x(centre), py = d.y(centre);
  const double R = options.ball_fraction * d.dist()[centre];

  MultiwellResult out;
  out.epsilon = eps;
  out.ordered = true;
  out.plateaus_ok = true;
  MonotoneOptions mopts = options.monotone;
  mopts.compute_maximal = false;

  for (int i = 1; i <= m; ++i) {
    const Potential Wi = W.kind() == PotentialKind::multi_well ? truncate_to_wells(W, i) : W;
    const double mu_i = Wi.mu();
    try {
      RadialProblem rp;
      rp.n = 2;
      rp.R = R;
      rp.potential = Wi;
      const RadialSolution radial = solve_radial_minimizer(rp);
      if (radial.trivial) {
        std::ostringstream os;
        os << "level " << i << ": the radial problem on B_" << R << " has only the trivial minimiser";
        fail(ErrorKind::assumption, os.str());
      }
      GridField2D ball = discrete_ball_field(domain, Wi, radial, px, py);
      // Raise the lower field to the previous solution where it is larger.
      std::vector<double> w(d.size(), mu_i);
      for (std::size_t k : d.unknowns()) {
        double u = ball.u[k];
        if (i > 1) u = std::max(u, out.solutions.back().u[k]);
        w[k] = std::min(mu_i - u, ball.deviation[k]);
      }
      const GridField2D lower = GridField2D::from_deviation(domain, mu_i, std::move(w));
      MonotoneResult mr = solve_monotone(domain, Wi, lower, mopts);
      GridField2D ui = newton_polish_2d(mr.minimal, Wi);

      double umax = -std::numeric_limits<double>::infinity();
      std::size_t on_plateau = 0;
      for (std::size_t k : d.unknowns()) {
        umax = std::max(umax, ui.u[k]);
        if (ui.deviation[k] <= eps) ++on_plateau;
      }
      out.mu.push_back(mu_i);
      out.max_value.push_back(umax);
      out.plateau_fraction.push_back(static_cast<double>(on_plateau) / d.unknowns().size());
      out.reports.push_back(mr.report);
      bool level_ok = umax >= mu_i - eps;
      if (i > 1) {
        const GridField2D& prev = out.solutions.back();
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t k : d.unknowns()) gap = std::min(gap, ui.u[k] - prev.u[k]);
        out.min_gap.push_back(gap);
        if (!(gap > 0.0)) out.ordered = false;
        level_ok = level_ok && out.mu[i - 2] < mu_i - eps;
      }
      out.solutions.push_back(std::move(ui));
      if (!level_ok) out.plateaus_ok = false;
      if ((!out.ordered || !level_ok) && !out.failure_index) {
        out.failure_index = i;
        if (level_ok) {
          out.failure = "ordering";
        } else {
          // Usually the cause of an ordering failure too: without its own
          // plateau u_i falls back onto u_{i-1}.
          std::ostringstream os;
          os << "plateau: max u_" << i << " = " << umax << " stays below mu_" << i << " - eps = "
             << mu_i - eps << "; the domain is too small for this well";
          out.failure = os.str();
        }
      }
    } catch (const Error& e) {
      out.ordered = false;
      out.plateaus_ok = false;
      out.failure_index = i;
      out.failure = std::string(to_string(e.kind())) + ": " + e.what();
      break;
    }
  }
  return out;
}

}  // namespace eland
