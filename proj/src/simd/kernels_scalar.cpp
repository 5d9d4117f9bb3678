#include "eland/simd/kernels.hpp"

#include <algorithm>

namespace eland::simd {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(const double* x, double alpha, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + alpha * y[i];
}

void mul(const double* a, const double* b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];
}

void clamp(double* x, double lo, double hi, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], lo, hi);
}

void stencil(const StencilArgs& a) {
  const std::size_t s = a.stride;
  for (std::size_t i = a.begin; i < a.end; ++i) {
    const double nb = a.cx[i] * a.x[i + 1] + a.cx[i - 1] * a.x[i - 1] + a.cy[i] * a.x[i + s] +
                      a.cy[i - s] * a.x[i - s];
    a.y[i] = a.mask[i] * (a.diag[i] * a.x[i] - a.scale * nb);
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", dot, axpy, xpay, mul, clamp, stencil};
  return table;
}

}  // namespace eland::simd
