// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <algorithm>

#include "eland/simd/kernels.hpp"

namespace eland::simd {

namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void xpay(const double* x, double alpha, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) y[i] = x[i] + alpha * y[i];
}

void mul(const double* a, const double* b, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  for (; i < n; ++i) y[i] = a[i] * b[i];
}

void clamp(double* x, double lo, double hi, std::size_t n) {
  const __m256d vlo = _mm256_set1_pd(lo), vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_min_pd(_mm256_max_pd(_mm256_loadu_pd(x + i), vlo), vhi));
  for (; i < n; ++i) x[i] = std::clamp(x[i], lo, hi);
}

void stencil(const StencilArgs& a) {
  const std::size_t s = a.stride;
  const __m256d vs = _mm256_set1_pd(a.scale);
  std::size_t i = a.begin;
  for (; i + 4 <= a.end; i += 4) {
    __m256d nb = _mm256_mul_pd(_mm256_loadu_pd(a.cx + i), _mm256_loadu_pd(a.x + i + 1));
    nb = _mm256_fmadd_pd(_mm256_loadu_pd(a.cx + i - 1), _mm256_loadu_pd(a.x + i - 1), nb);
    nb = _mm256_fmadd_pd(_mm256_loadu_pd(a.cy + i), _mm256_loadu_pd(a.x + i + s), nb);
    nb = _mm256_fmadd_pd(_mm256_loadu_pd(a.cy + i - s), _mm256_loadu_pd(a.x + i - s), nb);
    const __m256d d = _mm256_mul_pd(_mm256_loadu_pd(a.diag + i), _mm256_loadu_pd(a.x + i));
    const __m256d r = _mm256_fnmadd_pd(vs, nb, d);
    _mm256_storeu_pd(a.y + i, _mm256_mul_pd(_mm256_loadu_pd(a.mask + i), r));
  }
  for (; i < a.end; ++i) {
    const double nb = a.cx[i] * a.x[i + 1] + a.cx[i - 1] * a.x[i - 1] + a.cy[i] * a.x[i + s] +
                      a.cy[i - s] * a.x[i - s];
    a.y[i] = a.mask[i] * (a.diag[i] * a.x[i] - a.scale * nb);
  }
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{"avx2", dot, axpy, xpay, mul, clamp, stencil};
  return table;
}

}  // namespace eland::simd
