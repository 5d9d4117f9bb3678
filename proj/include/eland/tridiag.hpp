#pragma once

#include <cstddef>
#include <vector>

#include "eland/error.hpp"

namespace eland {

/// Solves a symmetric tridiagonal system in place (Thomas algorithm).
/// diag has N entries, off has N-1 (off[i] couples i and i+1); rhs is
/// overwritten with the solution. No pivoting: meant for the SPD and
/// M-matrix systems used here.
inline void solve_sym_tridiagonal(const std::vector<double>& diag, const std::vector<double>& off,
                                  std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n);
  double d = diag[0];
  if (d == 0.0) fail(ErrorKind::numeric, "tridiagonal solve: zero pivot");
  c[0] = n > 1 ? off[0] / d : 0.0;
  rhs[0] /= d;
  for (std::size_t i = 1; i < n; ++i) {
    d = diag[i] - off[i - 1] * c[i - 1];
    if (d == 0.0) fail(ErrorKind::numeric, "tridiagonal solve: zero pivot");
    c[i] = i + 1 < n ? off[i] / d : 0.0;
    rhs[i] = (rhs[i] - off[i - 1] * rhs[i - 1]) / d;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
}

}  // namespace eland
