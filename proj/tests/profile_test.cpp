#include <doctest.h>

#include <cmath>
#include <numbers>

#include "eland/error.hpp"
#include "eland/io.hpp"
#include "eland/profile.hpp"

using namespace eland;

TEST_SUITE("profile") {
  TEST_CASE("double well profile is tanh(s / sqrt 2)") {
    const auto P = compute_profile(Potential::double_well(), 1 - 1e-9, 400);
    for (double s : {0.0, 0.5, 1.0, 3.0, 7.5, 12.0})
      CHECK(P.value(s) == doctest::Approx(std::tanh(s / std::numbers::sqrt2)).epsilon(1e-10));
    // the slope follows from the first integral
    CHECK(P.slope(1.0) == doctest::Approx(1.0 / (std::numbers::sqrt2 * std::pow(std::cosh(1.0 / std::numbers::sqrt2), 2))).epsilon(1e-9));
    // far tail: 1 - tanh(x) ~ 2 e^{-2x}
    CHECK(P.deviation_at(40.0) == doctest::Approx(2 * std::exp(-2 * 40.0 / std::numbers::sqrt2)).epsilon(1e-6));
  }

  TEST_CASE("pure power p = 3 has the algebraic closed form") {
    const auto P = compute_profile(Potential::pure_power(1.0, 3.0), 1 - 1e-9, 400);
    for (double s : {0.1, 1.0, 10.0, 100.0})
      CHECK(P.deviation_at(s) == doctest::Approx(1.0 / (1.0 + std::numbers::sqrt2 * s)).epsilon(1e-9));
  }

  TEST_CASE("D' against sqrt2 atanh(1 - eps)") {
    const auto W = Potential::double_well();
    for (double eps : {0.5, 0.1, 1e-3})
      CHECK(compute_Dprime(W, eps) == doctest::Approx(std::numbers::sqrt2 * std::atanh(1 - eps)).epsilon(1e-10));
    CHECK(compute_Dprime(W, 0.999999) < 1e-5);
    CHECK_THROWS_AS(compute_Dprime(W, 0.0), Error);
  }

  TEST_CASE("decay fit picks the right model") {
    std::vector<double> s, e, a;
    for (int i = 0; i <= 100; ++i) {
      const double x = 1.0 + 0.1 * i;
      s.push_back(x);
      e.push_back(3.0 * std::exp(-1.5 * x));
      a.push_back(2.0 * std::pow(x, -2.0));
    }
    const auto fe = fit_decay(s, e, 1.0, 11.0);
    CHECK(fe.model == DecayModel::exponential);
    CHECK(fe.rate == doctest::Approx(1.5));
    CHECK(fe.constant == doctest::Approx(3.0));
    const auto fa = fit_decay(s, a, 1.0, 11.0);
    CHECK(fa.model == DecayModel::algebraic);
    CHECK(fa.rate == doctest::Approx(2.0));
    CHECK_THROWS_AS(fit_decay(s, e, 20.0, 30.0), Error);
  }

  TEST_CASE("profile csv layout") {
    const auto P = compute_profile(Potential::double_well(), 0.99, 32);
    const std::string csv = P.to_csv();
    CHECK(csv.rfind("s,U,Uprime,mu_minus_U\n", 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
  }

  TEST_CASE("rejects bad ranges") {
    const auto W = Potential::double_well();
    CHECK_THROWS_AS(compute_profile(W, 1.5, 100), Error);
    CHECK_THROWS_AS(compute_profile(W, 0.5, 4), Error);
  }

  TEST_CASE("number formatting round trips") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5})
      CHECK(std::stod(format_number(v)) == v);
  }
}
