#include <atomic>

#include "eland/simd/kernels.hpp"

namespace eland::simd {

namespace {
std::atomic<bool> g_force_scalar{false};
}

bool avx2_available() {
#if defined(ELAND_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelTable& active() {
#if defined(ELAND_HAVE_AVX2)
  if (!g_force_scalar.load(std::memory_order_relaxed) && avx2_available()) return avx2_kernels();
#endif
  return scalar_kernels();
}

void force_scalar(bool on) { g_force_scalar.store(on, std::memory_order_relaxed); }

}  // namespace eland::simd
