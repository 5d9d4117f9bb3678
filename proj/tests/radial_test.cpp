#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eland/error.hpp"
#include "eland/radial.hpp"

using namespace eland;

namespace {

RadialSolution solve(int n, double R, double h = 0.0, Potential W = Potential::double_well()) {
  RadialProblem p;
  p.n = n;
  p.R = R;
  p.h = h;
  p.potential = W;
  return solve_radial_minimizer(p);
}

}  // namespace

TEST_SUITE("radial") {
  TEST_CASE("torsion centre value 1/(2n)") {
    for (int n = 1; n <= 4; ++n) CHECK(torsion_center(n) == doctest::Approx(0.5 / n).epsilon(1e-9));
  }

  TEST_CASE("one-dimensional solution hugs the tanh layer") {
    const auto s = solve(1, 20.0);
    REQUIRE_FALSE(s.trivial);
    double err = 0.0;
    for (int k = 0; k <= s.mesh.K; ++k)
      err = std::max(err, std::abs(s.u[k] - std::tanh((s.R() - s.mesh.r[k]) / std::numbers::sqrt2)));
    CHECK(err < 1e-4);
    CHECK(s.flux == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-3));
    CHECK(s.residual < 1e-9);
  }

  TEST_CASE("below the critical radius the minimiser is zero") {
    const auto s = solve(1, 1.2);
    CHECK(s.trivial);
    for (double u : s.u) CHECK(u == 0.0);
  }

  TEST_CASE("critical radius sqrt(lambda_1) for the double well") {
    const auto W = Potential::double_well();
    const auto c1 = critical_radius(W, 1, 1.0, 2.0, 1e-3);
    CHECK(std::abs(c1.numeric - std::numbers::pi / 2) < 5e-3);
    CHECK(c1.lo <= c1.hi);
    CHECK_THROWS_AS(critical_radius(W, 1, 2.0, 3.0, 1e-3), Error);
  }

  TEST_CASE("energy of the zero field is W(0) |B_R|") {
    const auto m = make_radial_mesh(2, 5.0, 0.01);
    const auto W = Potential::double_well();
    const std::vector<double> w(static_cast<std::size_t>(m.K) + 1, 1.0);
    CHECK(radial_energy(m, W, w) == doctest::Approx(0.25 * std::numbers::pi * 25.0).epsilon(1e-12));
  }

  TEST_CASE("larger balls carry larger solutions") {
    const auto a = solve(2, 10.0, 0.01), b = solve(2, 20.0, 0.01);
    const auto rep = compare_nested(a, b);
    CHECK(rep.min_gap >= -1e-8);
    CHECK(rep.barrier_violation <= 1e-4);
  }

  TEST_CASE("plateau width, Modica margin and monotonicity") {
    const auto s = solve(2, 20.0);
    const double eps = 0.1;
    const auto d = diagnostics(s, eps);
    CHECK(d.plateau_width >= s.R() - (std::numbers::sqrt2 * std::atanh(1 - eps) + 0.5));
    CHECK(d.modica_margin > 0.0);
    CHECK(d.monotonicity_ok);
    CHECK(d.energy_ratio > 0.0);
  }

  TEST_CASE("sweep rows do not depend on their neighbours") {
    RadialProblem p;
    p.n = 1;
    const auto a = sweep_R(p, {10.0, 20.0});
    const auto b = sweep_R(p, {20.0});
    CHECK(a[1].flux == b[0].flux);
    CHECK(a[1].u0 == b[0].u0);
    CHECK(sweep_to_csv(a).rfind("R,flux,u0,plateau_width,energy_ratio,decay_rate,profile_gap,status\n", 0) == 0);
  }

  TEST_CASE("pure power centre values shrink like a power of R") {
    RadialProblem p;
    p.n = 2;
    p.potential = Potential::pure_power(1.0, 3.0);
    const auto rows = sweep_R(p, {10.0, 20.0, 40.0});
    const auto rep = center_bound_scan(rows, p.potential, 2);
    CHECK(rep.slope < -1.8);
    CHECK(rep.decreasing);
  }

  TEST_CASE("invalid problems") {
    CHECK_THROWS_AS(solve(0, 10.0), Error);
    CHECK_THROWS_AS(solve(2, -1.0), Error);
    CHECK_THROWS_AS(solve(2, 1.0, 0.3), Error);
    RadialProblem p;
    p.boundary_value = 1.0;
    CHECK_THROWS_AS(solve_radial_minimizer(p), Error);
  }
}
