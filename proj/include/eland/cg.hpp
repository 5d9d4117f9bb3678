#pragma once

#include <cstddef>
#include <vector>

#include "eland/grid2d.hpp"

namespace eland {

/// y = mask * (diag x - (1/h^2) sum_edges c_e x_nb) on a Domain2D grid. With
/// diag = edge_sum / h^2 + s * weight this is the symmetric matrix
/// A + s M of the weighted five-point Laplacian.
struct StencilSystem {
  const Domain2D* domain = nullptr;
  std::vector<double> mask;  // active unknowns (a subset of the domain mask)
  std::vector<double> diag;
  std::vector<double> inv_diag;
  double scale = 0.0;
  /// Relaxed modified incomplete Cholesky factor, stored as the reciprocal
  /// pivots and the pivot-scaled couplings of the two triangular sweeps.
  /// Empty when the factorisation broke down (Jacobi is used instead).
  std::vector<double> ic_inv, ic_west, ic_south, ic_east, ic_north;

  /// diag = edge_sum / h^2 + shift[k] * weight[k] on the active nodes.
  StencilSystem(const Domain2D& domain, const std::vector<double>& active_mask,
                const std::vector<double>& shift);
  void apply(const std::vector<double>& x, std::vector<double>& y) const;
  /// z = P^{-1} r with the incomplete factor (or the diagonal).
  void precondition(const std::vector<double>& r, std::vector<double>& z) const;
};

struct CgResult {
  int iterations = 0;
  double relative_residual = 0.0;
  bool indefinite = false;  // hit p'Ap <= 0
  bool converged = false;
};

/// Jacobi-preconditioned conjugate gradients from the given x (zero outside
/// the active mask); stops at ||b - A x|| <= tol ||b||.
CgResult conjugate_gradient(const StencilSystem& system, const std::vector<double>& b,
                            std::vector<double>& x, double tol, int max_iterations);

}  // namespace eland
