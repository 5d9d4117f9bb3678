#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eland/error.hpp"
#include "eland/experiments2d.hpp"
#include "eland/io.hpp"

namespace eland {

nlohmann::json SaddleResult::to_json() const {
  const Domain2D& d = *field.domain;
  return {{"L", d.x(d.index(d.nx() - 1, 0))},
          {"h", d.h()},
          {"flux_probe_x2", flux_probe_x2},
          {"flux_probe", flux_probe},
          {"min_inner", min_inner},
          {"positive", positive},
          {"axis_jump", axis_jump},
          {"residual", field.residual},
          {"energy", field.energy},
          {"trivial", field.trivial},
          {"iterations", field.iterations},
          {"wall_time", field.wall_time},
          {"notes", field.notes}};
}

std::string SaddleResult::flux_csv() const {
  CsvWriter csv({"x2", "flux"});
  for (std::size_t i = 0; i < x2.size(); ++i) csv.row({x2[i], flux[i]});
  return csv.str();
}

SaddleResult saddle_demo(const Potential& W, double L, double h, double probe_x2) {
  require(std::isfinite(L) && L >= 20.0, ErrorKind::domain, "saddle: L must be >= 20");
  require(probe_x2 > 0.0 && probe_x2 < L, ErrorKind::domain, "saddle: probe must lie in (0, L)");
  for (int k = 1; k <= 200; ++k) {
    const double t = W.mu() * k / 200.0;
    const double a = W.W(t), b = W.W(-t);
    if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a))) {
      std::ostringstream os;
      os << "saddle: W is not even, W(" << t << ") = " << a << " but W(" << -t << ") = " << b;
      fail(ErrorKind::assumption, os.str());
    }
  }

  SaddleResult out;
  nlohmann::json spec = {{"shape", "square_with_odd_symmetry"}, {"params", {{"L", L}}}, {"h", h}};
  const DomainPtr dom = build_domain(spec);
  const Domain2D& d = *dom;
  out.field = solve_minimizer_2d(dom, W);
  const GridField2D& f = out.field;

  // Nodes on the axes are Dirichlet, so dx1 u(0, x2) = u(h, x2) / h + O(h^2)
  // by oddness.
  for (int j = 1; j < d.ny(); ++j) {
    out.x2.push_back(j * h);
    out.flux.push_back(f.u[d.index(1, j)] / h);
  }
  const double t = probe_x2 / h;
  const int j0 = std::clamp(static_cast<int>(std::floor(t)), 1, d.ny() - 2);
  const double a = t - j0;
  out.flux_probe_x2 = probe_x2;
  out.flux_probe = (1.0 - a) * out.flux[static_cast<std::size_t>(j0 - 1)] + a * out.flux[static_cast<std::size_t>(j0)];

  out.min_inner = std::numeric_limits<double>::infinity();
  for (std::size_t k : d.unknowns())
    if (d.col(k) < d.nx() - 1 && d.row(k) < d.ny() - 1) out.min_inner = std::min(out.min_inner, f.u[k]);
  out.positive = !f.trivial && out.min_inner > 0.0;
  for (int i = 0; i < d.nx(); ++i)
    out.axis_jump = std::max({out.axis_jump, std::abs(f.u[d.index(i, 0)]), std::abs(f.u[d.index(0, i)])});
  if (f.trivial) out.field.notes.push_back("minimiser is trivial; no saddle");
  return out;
}

}  // namespace eland
