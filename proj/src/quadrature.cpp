#include "eland/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "eland/error.hpp"

namespace eland {

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double rel_tol, unsigned max_depth) {
  if (a == b) return {0.0, 0.0};
  // The estimate is |K15 - G7|, i.e. the error of the Gauss rule; the Kronrod
  // value is far better. Below ~1e-10 the estimate hits round-off and the
  // recursion would run to max_depth for nothing.
  const double tol = std::max(rel_tol, 1e-10);
  // Boost compares an unscaled per-panel error with a scaled tolerance, so
  // short intervals never terminate. Integrate on [-1, 1] instead.
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  auto g = [&](double x) { return half * f(mid + half * x); };
  double l1 = 0.0;
  double err = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      g, -1.0, 1.0, max_depth, tol, &err, &l1);
  if (!std::isfinite(value) || err > 10.0 * tol * std::max(l1, 1e-300)) {
    std::ostringstream os;
    os << "quadrature did not converge on [" << a << ", " << b << "], estimated error " << err;
    throw NumericError(os.str(), err);
  }
  return {value, err};
}

double integrate_gauss(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 20>::integrate(f, a, b);
}

}  // namespace eland
