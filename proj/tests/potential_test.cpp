#include <doctest.h>

#include <cmath>

#include "eland/error.hpp"
#include "eland/potential.hpp"

using namespace eland;

namespace {

double central_diff(const Potential& P, double t, int order) {
  const double e = 1e-5;
  return (P.eval(t + e, order) - P.eval(t - e, order)) / (2 * e);
}

}  // namespace

TEST_SUITE("potential") {
  TEST_CASE("double well closed form and derivatives") {
    const auto P = Potential::double_well();
    for (double t : {-0.7, 0.0, 0.3, 0.9, 1.0, 1.4}) {
      const double ref = 0.25 * (t * t - 1) * (t * t - 1);
      CHECK(P.W(t) == doctest::Approx(ref).epsilon(1e-14));
      CHECK(P.dW(t) == doctest::Approx(central_diff(P, t, 0)).epsilon(1e-8));
      CHECK(P.d2W(t) == doctest::Approx(central_diff(P, t, 1)).epsilon(1e-8));
    }
    CHECK(P.W(1.0) == 0.0);
    CHECK(P.d2W(1.0) == doctest::Approx(2.0));
  }

  TEST_CASE("pure power matches |t - mu|^(p+1)") {
    const auto P = Potential::pure_power(1.0, 3.0);
    for (double t : {0.0, 0.25, 0.5, 0.99}) CHECK(P.W(t) == doctest::Approx(std::pow(1 - t, 4)).epsilon(1e-13));
    CHECK(P.eval_from_well(1e-30, 1) == doctest::Approx(-4e-90));
  }

  TEST_CASE("cubic genetics derivative") {
    const auto P = Potential::cubic_genetics(1.0, 0.3);
    for (double t : {0.1, 0.5, 0.8}) CHECK(P.dW(t) == doctest::Approx(t * (t - 0.3) * (t - 1.0)).epsilon(1e-12));
    CHECK(std::abs(P.W(1.0)) < 1e-15);
  }

  TEST_CASE("multi well honours the prescribed depths") {
    const auto P = Potential::multi_well({{1.0, 0.08}, {2.0, 0.0}});
    CHECK(P.W(1.0) == doctest::Approx(0.08).epsilon(1e-12));
    CHECK(std::abs(P.W(2.0)) < 1e-14);
    CHECK(std::abs(P.dW(1.0)) < 1e-12);
    CHECK(std::abs(P.dW(2.0)) < 1e-12);
    CHECK(P.d2W(1.0) > 0.0);
  }

  TEST_CASE("truncation puts a zero-energy minimum at the chosen well") {
    const auto P = Potential::multi_well({{1.0, 0.08}, {2.0, 0.0}});
    const auto T = truncate_to_wells(P, 1);
    CHECK(T.mu() == doctest::Approx(1.0));
    double best = 1e300, at = -1;
    for (int i = 0; i <= 4000; ++i) {
      const double t = 3.0 * i / 4000.0;
      if (T.W(t) < best) {
        best = T.W(t);
        at = t;
      }
    }
    CHECK(T.W(1.0) == 0.0);
    CHECK(best >= -1e-14);
    CHECK(best < 1e-7);
    CHECK(std::abs(at - 1.0) <= 3.0 / 4000.0);
    CHECK(check_assumptions(T).a_prime);
  }

  TEST_CASE("linear continuation outside the window") {
    const auto P = Potential::double_well();
    const double hi = P.window_hi();
    CHECK(P.d2W(hi + 1.0) == 0.0);
    CHECK(P.dW(hi + 1.0) == doctest::Approx(P.dW(hi)));
  }

  TEST_CASE("json round trip and validation") {
    const auto P = Potential::from_json({{"kind", "pure_power"}, {"mu", 2.0}, {"p", 2.0}});
    const auto Q = Potential::from_json(P.to_json());
    CHECK(Q.W(0.7) == doctest::Approx(P.W(0.7)));
    CHECK_THROWS_AS(Potential::from_json({{"kind", "pure_power"}}), Error);
    CHECK_THROWS_AS(Potential::from_json({{"kind", "nope"}}), Error);
    CHECK_THROWS_AS(Potential::multi_well({{1.0, 0.0}, {2.0, 0.1}}), Error);
    CHECK_THROWS_AS(Potential::double_well(-1.0), Error);
  }

  TEST_CASE("assumption report for the double well") {
    const auto r = check_assumptions(Potential::double_well());
    CHECK(r.a_prime);
    CHECK(r.monotone_b);
    CHECK(r.d2W_nonneg_near_mu);
  }
}
