#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tailidx {

struct MinimizeOptions {
  double lo = -5.0;
  double hi = 5.0;
  std::size_t grid_points = 201;
  double tol = 1e-8;
  std::size_t max_iter = 200;
};

struct MinimizeResult {
  double x = 0.0;
  double value = 0.0;
  bool converged = false;
  /// Sign changes of the score over the coarse grid (0 when no score is evaluated).
  std::size_t sign_changes = 0;
  /// Incumbent objective value after each refinement step of the winning bracket.
  std::vector<double> path;
};

/// Objective evaluated at x. When `score` is non-null the callee also stores the
/// estimating-function value there; the solver asks for it on grid points only.
using ObjectiveFn = std::function<double(double x, double* score)>;

/// Global scan on an equispaced grid, then golden-section refinement of every grid
/// local minimum on its neighbouring cells. The candidate with the smallest
/// objective wins; exact ties go to the smallest |x|. NaN objectives count as +inf.
/// If any refinement of the winner hits max_iter, converged is false and the
/// best grid point is reported. With count_score_roots the score must be a positive
/// multiple of the derivative; a converged bracket across which it changes sign is
/// then polished to the score's root.
MinimizeResult grid_golden_minimize(const ObjectiveFn& f, const MinimizeOptions& opt, bool count_score_roots);

}  // namespace tailidx
