#include <doctest.h>

#include <cmath>

#include "eland/error.hpp"
#include "eland/experiments2d.hpp"

using namespace eland;

TEST_SUITE("experiments") {
  TEST_CASE("scaling a domain spec") {
    const nlohmann::json spec = {{"shape", "disk"}, {"params", {{"center", {1.0, -2.0}}, {"radius", 0.5}}}, {"h", 0.1}};
    const auto s = scale_domain_spec(spec, 4.0, 0.2);
    CHECK(s["params"]["radius"].get<double>() == 2.0);
    CHECK(s["params"]["center"][1].get<double>() == -8.0);
    CHECK(s["h"].get<double>() == 0.2);
    const nlohmann::json u = {{"shape", "union_of_disks"}, {"params", {{"disks", {{0.0, 0.0, 1.0}, {1.0, 0.0, 1.0}}}}}};
    CHECK(scale_domain_spec(u, 2.0, 0.1)["params"]["disks"][1][0].get<double>() == 2.0);
  }

  TEST_CASE("layer width interpolates the eps crossing") {
    const auto d = std::make_shared<const Domain2D>(Domain2D::rectangle(0.0, 20.0, 0.0, 20.0, 0.1));
    std::vector<double> w(d->size(), 1.0);
    for (std::size_t k : d->unknowns()) w[k] = 0.1 * std::exp(-(d->dist()[k] - 3.0));
    const auto f = GridField2D::from_deviation(d, 1.0, w);
    CHECK(layer_width(f, 0.1) == doctest::Approx(3.0).epsilon(1e-3));
  }

  TEST_CASE("layer rows on a small lambda") {
    const nlohmann::json sq = {{"shape", "rectangle"}, {"params", {{"width", 1.0}, {"height", 1.0}}}, {"h", 0.1}};
    const auto t = layer_experiment(sq, Potential::double_well(), {20.0, 30.0}, 0.1);
    REQUIRE(t.rows.size() == 2);
    for (const auto& r : t.rows) {
      CHECK(r.status == "ok");
      CHECK(r.width_lambda == doctest::Approx(t.Dprime).epsilon(0.2));
      CHECK(r.width_1d_lambda == doctest::Approx(t.Dprime).epsilon(0.01));
    }
    CHECK(t.width_decreasing);
    CHECK(t.to_csv().rfind("lambda,h,nodes,width,width_lambda,width_1d_lambda,status\n", 0) == 0);
  }

  TEST_CASE("layer budget and lambda checks") {
    const nlohmann::json sq = {{"shape", "rectangle"}, {"params", {{"width", 1.0}, {"height", 1.0}}}, {"h", 0.1}};
    CHECK_THROWS_AS(layer_experiment(sq, Potential::double_well(), {5.0}, 0.1), Error);
    try {
      layer_experiment(sq, Potential::double_well(), {1e5}, 0.1);
      FAIL("expected a budget error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::budget);
    }
  }

  TEST_CASE("saddle preconditions") {
    CHECK_THROWS_AS(saddle_demo(Potential::double_well(), 10.0), Error);
    CHECK_THROWS_AS(saddle_demo(Potential::cubic_genetics(1.0, 0.3), 30.0), Error);
  }

  TEST_CASE("single-well potential gives one level") {
    const auto d = std::make_shared<const Domain2D>(Domain2D::rectangle(0.0, 12.0, 0.0, 12.0, 0.1));
    const auto r = multiwell_ordered(d, Potential::double_well(), 0.1);
    CHECK(r.solutions.size() == 1);
    CHECK(r.ordered);
    CHECK(r.plateaus_ok);
  }
}
