#include <doctest.h>

#include <cmath>
#include <sstream>

#include "eland/error.hpp"
#include "eland/grid2d.hpp"

using namespace eland;

TEST_SUITE("grid") {
  TEST_CASE("rectangle nodes and exact distance") {
    const auto d = Domain2D::rectangle(0.0, 2.0, 0.0, 1.0, 0.1);
    CHECK(d.nx() == 21);
    CHECK(d.ny() == 11);
    CHECK(d.unknowns().size() == 19u * 9u);
    double err = 0.0;
    for (std::size_t k : d.unknowns()) {
      const double x = d.x(k), y = d.y(k);
      err = std::max(err, std::abs(d.dist()[k] - std::min({x, 2.0 - x, y, 1.0 - y})));
    }
    CHECK(err < 1e-12);
    CHECK(d.dist_max() == doctest::Approx(0.5));
  }

  TEST_CASE("disk distance from bisected boundary crossings") {
    const auto d = Domain2D::disk(0.0, 0.0, 1.0, 0.05);
    double err = 0.0;
    for (std::size_t k : d.unknowns()) err = std::max(err, std::abs(d.dist()[k] - (1.0 - std::hypot(d.x(k), d.y(k)))));
    CHECK(err < 0.01);
    CHECK(d.dist_at(0.0, 0.0) == doctest::Approx(1.0).epsilon(0.01));
  }

  TEST_CASE("annulus and overlapping disks are accepted") {
    const auto a = Domain2D::annulus(0.0, 0.0, 1.0, 3.0, 0.1);
    for (std::size_t k : a.unknowns()) {
      const double r = std::hypot(a.x(k), a.y(k));
      CHECK(r > 1.0);
      CHECK(r < 3.0);
    }
    const auto u = Domain2D::union_of_disks({{0.0, 0.0, 1.0}, {1.5, 0.0, 1.0}}, 0.1);
    CHECK(u.unknowns().size() > Domain2D::disk(0.0, 0.0, 1.0, 0.1).unknowns().size());
  }

  TEST_CASE("odd-symmetry square weights") {
    const auto d = Domain2D::odd_symmetry_square(2.0, 0.5);
    const int last = d.nx() - 1;
    CHECK(d.weight()[d.index(1, 1)] == 1.0);
    CHECK(d.weight()[d.index(last, 1)] == 0.5);
    CHECK(d.weight()[d.index(1, last)] == 0.5);
    CHECK(d.weight()[d.index(last, last)] == 0.25);
    CHECK_FALSE(d.is_unknown(d.index(0, 2)));
    CHECK_FALSE(d.is_unknown(d.index(2, 0)));
    // the far edges are not boundary: distance measured to the axes only
    CHECK(d.dist()[d.index(last, last)] == doctest::Approx(2.0));
  }

  TEST_CASE("rejected domains") {
    CHECK_THROWS_AS(Domain2D::rectangle(0.0, 1.0, 0.0, 1.0, 0.3), Error);
    CHECK_THROWS_AS(Domain2D::rectangle(0.0, 0.1, 0.0, 0.1, 0.1), Error);
    CHECK_THROWS_AS(Domain2D::union_of_disks({{0.0, 0.0, 1.0}, {5.0, 0.0, 1.0}}, 0.1), Error);
    CHECK_THROWS_AS(Domain2D::from_json({{"shape", "hexagon"}, {"params", nlohmann::json::object()}, {"h", 0.1}}), Error);
  }

  TEST_CASE("json round trip") {
    const nlohmann::json spec = {{"shape", "disk"}, {"params", {{"center", {1.0, 2.0}}, {"radius", 1.5}}}, {"h", 0.1}};
    const auto a = Domain2D::from_json(spec);
    const auto b = Domain2D::from_json(a.to_json());
    CHECK(a.unknowns() == b.unknowns());
    CHECK(a.dist() == b.dist());
  }

  TEST_CASE("field csv and reflection") {
    const auto d = std::make_shared<const Domain2D>(Domain2D::odd_symmetry_square(2.0, 0.5));
    std::vector<double> w(d->size(), 0.0);
    const auto f = GridField2D::from_deviation(d, 1.0, w);
    const std::string csv = f.to_csv();
    CHECK(csv.rfind("x,y,u\n", 0) == 0);
    std::istringstream in(csv);
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 9 * 9);  // [-2, 2]^2 at h = 0.5
    CHECK(f.value_at(0.0, 1.0) == 0.0);
  }
}
