#pragma once

#include <cstddef>

namespace eland::simd {

/// Arguments of the weighted five-point stencil
///   y[i] = mask[i] * (diag[i] x[i] - s (cx[i] x[i+1] + cx[i-1] x[i-1]
///                                      + cy[i] x[i+stride] + cy[i-stride] x[i-stride]))
/// evaluated for i in [begin, end). Indices i - stride and i + stride must
/// stay inside the arrays (the grid carries a ghost ring).
struct StencilArgs {
  const double* x;
  double* y;
  const double* diag;
  const double* cx;
  const double* cy;
  const double* mask;
  std::size_t stride;
  std::size_t begin;
  std::size_t end;
  double scale;
};

struct KernelTable {
  const char* name;
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);   // y += alpha x
  void (*xpay)(const double* x, double alpha, double* y, std::size_t n);   // y = x + alpha y
  void (*mul)(const double* a, const double* b, double* y, std::size_t n); // y = a * b
  void (*clamp)(double* x, double lo, double hi, std::size_t n);
  void (*stencil)(const StencilArgs& args);
};

const KernelTable& scalar_kernels();
#if defined(ELAND_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

/// The table used by the solvers: AVX2+FMA when the CPU has it, scalar
/// otherwise or when forced.
const KernelTable& active();
/// Pins the scalar reference kernels (for equivalence tests); false restores
/// runtime selection.
void force_scalar(bool on);
bool avx2_available();

}  // namespace eland::simd
