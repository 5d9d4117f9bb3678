#pragma once

#include <functional>

namespace eland {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (7/15) on [a, b]. Throws a numeric error naming the
/// interval when the estimated relative error stays above rel_tol
/// (floored at 1e-10, where the embedded estimate reaches round-off).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a,
                                    double b, double rel_tol = 1e-12,
                                    unsigned max_depth = 15);

/// Fixed 20-point Gauss-Legendre rule; for short, smooth subintervals.
double integrate_gauss(const std::function<double(double)>& f, double a, double b);

}  // namespace eland
