#include <doctest.h>

#include <cmath>

#include "eland/error.hpp"
#include "eland/spectrum.hpp"

using namespace eland;

namespace {

// Smallest eigenvalue of the symmetrised n = 1 matrix by Sturm counts.
double sturm_smallest(const RadialSolution& s) {
  const double h = s.mesh.h;
  const int K = s.mesh.K;
  std::vector<double> d(K), e(K, -1.0 / (h * h));
  for (int k = 0; k < K; ++k) d[k] = 2.0 / (h * h) + s.problem.potential.d2W(s.u[k]);
  e[1] = -std::sqrt(2.0) / (h * h);  // row 0 carries 2 (phi0 - phi1) / h^2
  auto below = [&](double lam) {
    int count = 0;
    double q = d[0] - lam;
    if (q < 0) ++count;
    for (int k = 1; k < K; ++k) {
      q = d[k] - lam - e[k] * e[k] / (q == 0.0 ? 1e-300 : q);
      if (q < 0) ++count;
    }
    return count;
  };
  double lo = -10.0, hi = 10.0;
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (below(mid) >= 1 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

RadialSolution solve(int n, double R, double h = 0.0) {
  RadialProblem p;
  p.n = n;
  p.R = R;
  p.h = h;
  return solve_radial_minimizer(p);
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("principal eigenvalue agrees with a Sturm-sequence count") {
    const auto s = solve(1, 8.0);
    const auto e = principal_eigenpair(s);
    CHECK(e.mu_R == doctest::Approx(sturm_smallest(s)).epsilon(1e-8));
    CHECK(e.rayleigh == doctest::Approx(e.mu_R).epsilon(1e-9));
    CHECK(e.extra_step_change < 1e-10);
  }

  TEST_CASE("eigenfunction is positive and sup-normalised") {
    const auto e = principal_eigenpair(solve(2, 10.0));
    double top = 0.0;
    for (std::size_t i = 0; i + 1 < e.phi.size(); ++i) {
      CHECK(e.phi[i] > 0.0);
      top = std::max(top, e.phi[i]);
    }
    CHECK(top == doctest::Approx(1.0));
    CHECK(e.phi.back() == 0.0);
    CHECK(e.mu_R >= e.lower_bound);
    CHECK(e.lower_bound == doctest::Approx(-2.0).epsilon(1e-6));
  }

  TEST_CASE("zeta identity residual is second order in h") {
    const auto a = zeta_identity_residual(solve(2, 10.0, 0.01));
    const auto b = zeta_identity_residual(solve(2, 10.0, 0.005));
    CHECK(a.residual / b.residual == doctest::Approx(4.0).epsilon(0.1));
    CHECK_FALSE(b.range_exceeded);
  }

  TEST_CASE("trivial solutions have no spectrum here") {
    CHECK_THROWS_AS(principal_eigenpair(solve(1, 1.0)), Error);
  }

  TEST_CASE("stability sweep positivity") {
    RadialProblem p;
    p.n = 2;
    SweepOptions o;
    o.keep_solutions = true;
    const auto rep = stability_sweep(sweep_R(p, {10.0, 20.0}, o));
    CHECK(rep.all_positive);
    CHECK(rep.rows.size() == 2);
  }
}
