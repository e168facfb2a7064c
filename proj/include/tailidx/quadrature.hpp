#pragma once

#include <cstddef>
#include <functional>

namespace tailidx {

struct QuadratureOptions {
  /// Relative tolerance against the integral of |f|.
  double tol = 1e-10;
  /// Grading depth of the first pass; doubled until convergence.
  std::size_t initial_depth = 8;
  /// Depth beyond which QuadratureError is raised (panels reach 2^-(depth+1)).
  std::size_t max_depth = 512;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_value = 0.0;
  std::size_t depth = 0;
  /// |I(depth) - I(depth / 2)|.
  double last_change = 0.0;
};

/// Integral of f over the open interval (0, 1). Composite 20-point Gauss-Legendre
/// on panels graded geometrically toward both endpoints; f is only evaluated at
/// interior nodes. The grading depth is doubled until two successive results agree
/// to tol. Throws QuadratureError on a non-finite value or when max_depth is exceeded.
QuadratureResult integrate_unit_interval(const std::function<double(double)>& f, const QuadratureOptions& opt = {});

}  // namespace tailidx
