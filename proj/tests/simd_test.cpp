#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "eland/simd/kernels.hpp"

using namespace eland::simd;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = U(rng);
  return v;
}

bool close(double a, double b, double tol = 1e-14) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("scalar table is always there") {
    CHECK(scalar_kernels().name != nullptr);
    force_scalar(true);
    CHECK(&active() == &scalar_kernels());
    force_scalar(false);
  }

#if defined(ELAND_HAVE_AVX2)
  TEST_CASE("avx2 kernels match the scalar reference") {
    if (!avx2_available()) return;
    const auto& S = scalar_kernels();
    const auto& V = avx2_kernels();
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 37u, 1000u}) {
      const auto a = random_vec(n, 1), b = random_vec(n, 2);
      CHECK(close(V.dot(a.data(), b.data(), n), S.dot(a.data(), b.data(), n), 1e-13));

      auto y1 = b, y2 = b;
      S.axpy(0.37, a.data(), y1.data(), n);
      V.axpy(0.37, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i]));

      y1 = b, y2 = b;
      S.xpay(a.data(), -1.3, y1.data(), n);
      V.xpay(a.data(), -1.3, y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(close(y1[i], y2[i]));

      std::vector<double> m1(n), m2(n);
      S.mul(a.data(), b.data(), m1.data(), n);
      V.mul(a.data(), b.data(), m2.data(), n);
      CHECK(m1 == m2);

      y1 = a, y2 = a;
      S.clamp(y1.data(), -0.2, 0.5, n);
      V.clamp(y2.data(), -0.2, 0.5, n);
      CHECK(y1 == y2);
    }
  }

  TEST_CASE("avx2 stencil matches the scalar reference") {
    if (!avx2_available()) return;
    const std::size_t stride = 13, rows = 9, N = stride * rows;
    const auto x = random_vec(N, 3), diag = random_vec(N, 4), cx = random_vec(N, 5), cy = random_vec(N, 6);
    auto mask = random_vec(N, 7);
    for (auto& m : mask) m = m > -0.3 ? 1.0 : 0.0;
    for (std::size_t begin : {stride, stride + 1}) {
      std::vector<double> y1(N, 9.0), y2(N, 9.0);
      const std::size_t end = N - stride - 2;
      scalar_kernels().stencil({x.data(), y1.data(), diag.data(), cx.data(), cy.data(), mask.data(), stride, begin, end, 4.0});
      avx2_kernels().stencil({x.data(), y2.data(), diag.data(), cx.data(), cy.data(), mask.data(), stride, begin, end, 4.0});
      for (std::size_t i = 0; i < N; ++i) CHECK(close(y1[i], y2[i], 1e-13));
    }
  }
#endif
}
