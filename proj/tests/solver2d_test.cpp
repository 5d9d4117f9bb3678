#include <doctest.h>

#include <cmath>
#include <random>

#include "eland/cg.hpp"
#include "eland/error.hpp"
#include "eland/simd/kernels.hpp"
#include "eland/solve2d.hpp"

using namespace eland;

namespace {

DomainPtr square(double a, double h) {
  return std::make_shared<const Domain2D>(Domain2D::rectangle(0.0, a, 0.0, a, h));
}

}  // namespace

TEST_SUITE("solver2d") {
  TEST_CASE("conjugate gradients recover a manufactured solution") {
    const auto d = square(3.0, 0.1);
    std::vector<double> shift(d->size(), 0.5);
    const StencilSystem S(*d, d->mask(), shift);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<double> xs(d->size(), 0.0), b(d->size(), 0.0), x(d->size(), 0.0);
    for (std::size_t k : d->unknowns()) xs[k] = U(rng);
    S.apply(xs, b);
    const auto r = conjugate_gradient(S, b, x, 1e-13, 2000);
    CHECK(r.converged);
    CHECK_FALSE(r.indefinite);
    double err = 0.0;
    for (std::size_t k : d->unknowns()) err = std::max(err, std::abs(x[k] - xs[k]));
    CHECK(err < 1e-9);
  }

  TEST_CASE("stencil matches the hand-written five-point formula") {
    const auto d = square(1.0, 0.1);
    std::vector<double> shift(d->size(), 0.0), x(d->size(), 0.0), y(d->size(), 0.0);
    for (std::size_t k : d->unknowns()) x[k] = std::sin(d->x(k)) * std::cos(2 * d->y(k));
    StencilSystem(*d, d->mask(), shift).apply(x, y);
    const std::size_t k = d->index(4, 6), s = d->stride();
    const double ref = (4 * x[k] - x[k - 1] - x[k + 1] - x[k - s] - x[k + s]) / 0.01;
    CHECK(y[k] == doctest::Approx(ref).epsilon(1e-12));
  }

  TEST_CASE("energy and residual of simple fields") {
    const auto d = square(2.0, 0.1);
    const auto W = Potential::double_well();
    const std::vector<double> zero(d->size(), 1.0);  // u = 0 everywhere
    CHECK(energy_2d(*d, W, zero) == doctest::Approx(0.01 * 0.25 * d->unknowns().size()));
    CHECK(residual_2d(*d, W, zero) == 0.0);  // W'(0) = 0
    std::vector<double> w(d->size(), 1.0);
    const std::size_t k = d->index(10, 10);
    w[k] = 0.5;  // u = 0.5 at one node
    const double lap = -4 * 0.5 / 0.01, Wp = 0.5 * (0.25 - 1.0);
    CHECK(residual_2d(*d, W, w) == doctest::Approx(std::abs(lap - Wp)));
  }

  TEST_CASE("small square has only the zero minimiser") {
    const auto f = solve_minimizer_2d(square(3.0, 0.1), Potential::double_well());
    CHECK(f.trivial);
    CHECK(f.max_interior() == 0.0);
  }

  TEST_CASE("monotone and minimiser routes agree on a 12 x 12 square") {
    const auto d = square(12.0, 0.1);
    const auto W = Potential::double_well();
    RadialProblem rp;
    rp.n = 2;
    rp.R = 4.0;
    const auto rad = solve_radial_minimizer(rp);
    const auto lower = lower_solution_field(d, rad, 6.0, 6.0);
    const auto mono = solve_monotone(d, W, lower);
    const auto mini = solve_minimizer_2d(d, W);
    REQUIRE_FALSE(mini.trivial);
    CHECK(mini.min_interior() > 0.0);
    CHECK(mini.max_interior() < 1.0);
    CHECK(mini.residual < 1e-8);
    CHECK(sup_difference(mono.minimal, mini) < 5e-3);
    REQUIRE(mono.report.max_minus_min.has_value());
    CHECK(*mono.report.max_minus_min >= -1e-9);
    CHECK(mono.report.lower_gap >= -1e-9);
    const auto rep = verify_main_theorem(mini, W, 0.1, 2.6);
    CHECK(rep.bounds_ok);
    CHECK(rep.plateau_ok);
    CHECK_THROWS_AS(verify_main_theorem(mini, W, 0.1, 1.0), Error);
  }

  TEST_CASE("scalar and vector kernels give the same solution") {
    const auto d = square(10.0, 0.1);
    const auto W = Potential::double_well();
    simd::force_scalar(true);
    const auto a = solve_minimizer_2d(d, W);
    simd::force_scalar(false);
    const auto b = solve_minimizer_2d(d, W);
    CHECK(sup_difference(a, b) < 1e-9);
  }

  TEST_CASE("lower solution ball must fit") {
    RadialProblem rp;
    rp.n = 2;
    rp.R = 4.0;
    const auto rad = solve_radial_minimizer(rp);
    CHECK_THROWS_AS(lower_solution_field(square(6.0, 0.1), rad, 3.0, 3.0), Error);
  }
}
