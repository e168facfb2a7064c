#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tailidx {

/// Y_j = j log((X_(n-j+1) - X_(n-k)) / (X_(n-j) - X_(n-k))), j = 1..k-1.
/// Under the exponential regression model Y_j ~ Exp(theta(gamma, j/(k+1))).
struct ScaledLogRatios {
  std::vector<double> y;
  std::size_t k = 0;

  /// Wraps precomputed observations (e.g. simulated W_j); k = y.size() + 1.
  static ScaledLogRatios from_values(std::vector<double> y);
};

/// Z_j = log X_(n-j+1) - log X_(n-k), j = 1..k (j = 1 is the largest).
struct LogExcesses {
  std::vector<double> z;
  std::size_t k = 0;
};

/// Throws SizeError unless 2 <= k < n, TieError on ties among the top k+1 values.
ScaledLogRatios scaled_log_ratios(std::span<const double> sample, std::size_t k);

/// Throws SizeError unless 1 <= k < n, PositivityError if X_(n-k) <= 0, TieError on ties.
LogExcesses log_excesses(std::span<const double> sample, std::size_t k);

/// |gamma| below this uses the gamma -> 0 limits of theta and J.
inline constexpr double kGammaBranch = 1e-6;

/// Mean of Y_j: gamma / (1 - u^gamma), or -1/log u for gamma ~ 0. Always positive.
double theta(double gamma, double u);
/// J(u) = (u^gamma - 1 - gamma u^gamma log u) / gamma^2, or -(log u)^2 / 2 for gamma ~ 0.
double j_weight(double gamma, double u);
/// J(u) theta^(-alpha).
double j_alpha_weight(double gamma, double u, double alpha);

/// Same functions taking log u directly (used by the hot loops of the estimators).
double theta_log(double gamma, double log_u);
double j_weight_log(double gamma, double log_u);

}  // namespace tailidx
