#include "eland/cg.hpp"

#include <cmath>

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

#include "eland/simd/kernels.hpp"

namespace eland {

StencilSystem::StencilSystem(const Domain2D& d, const std::vector<double>& active_mask,
                             const std::vector<double>& shift)
    : domain(&d), mask(active_mask), scale(1.0 / (d.h() * d.h())) {
  diag.assign(d.size(), 0.0);
  inv_diag.assign(d.size(), 0.0);
  for (std::size_t k : d.unknowns()) {
    if (mask[k] == 0.0) continue;
    diag[k] = d.edge_sum()[k] * scale + shift[k] * d.weight()[k];
    inv_diag[k] = 1.0 / diag[k];
  }
  // Row-major incomplete factor (D + L) D^{-1} (D + L^T) keeping the
  // five-point pattern; the dropped fill is partly added back to the pivot
  // (relaxation omega).
  constexpr double omega = 0.95;
  const std::size_t s = d.stride(), N = d.size();
  const auto& cx = d.edge_x();
  const auto& cy = d.edge_y();
  auto coupled = [&](std::size_t a, std::size_t b) { return mask[a] != 0.0 && mask[b] != 0.0; };
  std::vector<double> pivot(N, 1.0);
  for (std::size_t k = d.first(); k < d.last(); ++k) {
    if (mask[k] == 0.0) continue;
    double p = diag[k];
    if (coupled(k, k - 1)) {
      const double a = scale * cx[k - 1];
      const double up = coupled(k - 1, k - 1 + s) ? scale * cy[k - 1] : 0.0;
      p -= a * (a + omega * up) / pivot[k - 1];
    }
    if (coupled(k, k - s)) {
      const double a = scale * cy[k - s];
      const double right = coupled(k - s, k - s + 1) ? scale * cx[k - s] : 0.0;
      p -= a * (a + omega * right) / pivot[k - s];
    }
    if (!(p > 1e-12 * diag[k])) return;  // breakdown: stay with Jacobi
    pivot[k] = p;
  }
  ic_inv.assign(N, 0.0);
  ic_west.assign(N, 0.0);
  ic_south.assign(N, 0.0);
  ic_east.assign(N, 0.0);
  ic_north.assign(N, 0.0);
  for (std::size_t k = d.first(); k < d.last(); ++k) {
    if (mask[k] == 0.0) continue;
    const double inv = 1.0 / pivot[k];
    ic_inv[k] = inv;
    if (coupled(k, k - 1)) ic_west[k] = scale * cx[k - 1] * inv;
    if (coupled(k, k - s)) ic_south[k] = scale * cy[k - s] * inv;
    if (coupled(k, k + 1)) ic_east[k] = scale * cx[k] * inv;
    if (coupled(k, k + s)) ic_north[k] = scale * cy[k] * inv;
  }
}

void StencilSystem::apply(const std::vector<double>& x, std::vector<double>& y) const {
  const auto& e = *domain;
  simd::active().stencil({x.data(), y.data(), diag.data(), e.edge_x().data(), e.edge_y().data(),
                          mask.data(), e.stride(), e.first(), e.last(), scale});
}

void StencilSystem::precondition(const std::vector<double>& r, std::vector<double>& z) const {
  const Domain2D& d = *domain;
  const std::size_t lo = d.first(), hi = d.last();
  if (ic_inv.empty()) {
    simd::active().mul(r.data() + lo, inv_diag.data() + lo, z.data() + lo, hi - lo);
    return;
  }
  const std::size_t s = d.stride();
  // The row recurrence is latency bound: keep the previous value in a
  // register so that one multiply and one add sit on the dependency chain.
  double prev = 0.0;
  for (std::size_t k = lo; k < hi; ++k) {
    const double v = ic_west[k] * prev + (r[k] * ic_inv[k] + ic_south[k] * z[k - s]);
    z[k] = v;
    prev = v;
  }
  double next = 0.0;
  for (std::size_t k = hi; k-- > lo;) {
    const double v = ic_east[k] * next + (z[k] + ic_north[k] * z[k + s]);
    z[k] = v;
    next = v;
  }
}

namespace {

// Increments decay exponentially away from the layers and end up subnormal;
// x86 handles those in microcode, roughly 100x slower. Flush them to zero
// for the duration of a solve.
class FlushSubnormals {
 public:
#if defined(__SSE2__)
  FlushSubnormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040u); }
  ~FlushSubnormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

}  // namespace

CgResult conjugate_gradient(const StencilSystem& S, const std::vector<double>& b,
                            std::vector<double>& x, double tol, int max_iterations) {
  const FlushSubnormals ftz;
  const auto& K = simd::active();
  const Domain2D& d = *S.domain;
  const std::size_t lo = d.first(), n = d.last() - d.first();
  const std::size_t N = d.size();
  std::vector<double> r(N, 0.0), z(N, 0.0), p(N, 0.0), Ap(N, 0.0);
  CgResult res;

  const double bnorm = std::sqrt(K.dot(b.data() + lo, b.data() + lo, n));
  S.apply(x, Ap);
  for (std::size_t k = lo; k < lo + n; ++k) r[k] = S.mask[k] * (b[k] - Ap[k]);
  double rnorm = std::sqrt(K.dot(r.data() + lo, r.data() + lo, n));
  if (bnorm == 0.0 || rnorm <= tol * bnorm) {
    res.relative_residual = bnorm == 0.0 ? rnorm : rnorm / bnorm;
    res.converged = true;
    if (bnorm == 0.0) K.mul(x.data() + lo, S.mask.data() + lo, x.data() + lo, n);
    return res;
  }
  S.precondition(r, z);
  p = z;
  double rz = K.dot(r.data() + lo, z.data() + lo, n);
  for (int it = 1; it <= max_iterations; ++it) {
    S.apply(p, Ap);
    const double pAp = K.dot(p.data() + lo, Ap.data() + lo, n);
    if (!(pAp > 0.0)) {
      res.indefinite = true;
      res.iterations = it;
      res.relative_residual = rnorm / bnorm;
      return res;
    }
    const double alpha = rz / pAp;
    K.axpy(alpha, p.data() + lo, x.data() + lo, n);
    K.axpy(-alpha, Ap.data() + lo, r.data() + lo, n);
    rnorm = std::sqrt(K.dot(r.data() + lo, r.data() + lo, n));
    res.iterations = it;
    res.relative_residual = rnorm / bnorm;
    if (rnorm <= tol * bnorm) {
      res.converged = true;
      return res;
    }
    S.precondition(r, z);
    const double rz_new = K.dot(r.data() + lo, z.data() + lo, n);
    K.xpay(z.data() + lo, rz_new / rz, p.data() + lo, n);
    rz = rz_new;
  }
  return res;
}

}  // namespace eland
