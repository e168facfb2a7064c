#include "tailidx/tail_transform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "tailidx/error.hpp"

namespace tailidx {

namespace {

// Top k+1 order statistics, largest first, with strictness checked.
std::vector<double> top_order_statistics(std::span<const double> sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k >= n) {
    throw SizeError("k = " + std::to_string(k) + " must be smaller than the sample size " + std::to_string(n));
  }
  std::vector<double> x(sample.begin(), sample.end());
  std::partial_sort(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k + 1), x.end(), std::greater<>());
  x.resize(k + 1);
  for (std::size_t i = 0; i < k; ++i) {
    if (!std::isfinite(x[i])) throw DomainError("sample contains a non-finite value");
    if (!(x[i] > x[i + 1])) {
      throw TieError("tied values among the top " + std::to_string(k + 1) + " order statistics");
    }
  }
  return x;
}

}  // namespace

ScaledLogRatios ScaledLogRatios::from_values(std::vector<double> y) {
  if (y.empty()) throw SizeError("at least one scaled log-ratio is required");
  const std::size_t k = y.size() + 1;
  return ScaledLogRatios{std::move(y), k};
}

ScaledLogRatios scaled_log_ratios(std::span<const double> sample, std::size_t k) {
  if (k < 2) throw SizeError("k must be at least 2 for the scaled log-ratios");
  const auto x = top_order_statistics(sample, k);
  // x[0] = X_(n), x[j] = X_(n-j), x[k] = X_(n-k).
  const double threshold = x[k];
  ScaledLogRatios out;
  out.k = k;
  out.y.resize(k - 1);
  for (std::size_t j = 1; j < k; ++j) {
    const double num = x[j - 1] - threshold;
    const double den = x[j] - threshold;
    out.y[j - 1] = static_cast<double>(j) * std::log(num / den);
  }
  return out;
}

LogExcesses log_excesses(std::span<const double> sample, std::size_t k) {
  if (k < 1) throw SizeError("k must be at least 1 for the log-excesses");
  const auto x = top_order_statistics(sample, k);
  if (!(x[k] > 0.0)) throw PositivityError("threshold order statistic X_(n-k) must be positive");
  const double log_threshold = std::log(x[k]);
  LogExcesses out;
  out.k = k;
  out.z.resize(k);
  for (std::size_t j = 0; j < k; ++j) out.z[j] = std::log(x[j]) - log_threshold;
  return out;
}

double theta_log(double gamma, double log_u) {
  if (std::abs(gamma) < kGammaBranch) return -1.0 / log_u;
  // 1 - u^gamma without cancellation.
  return gamma / -std::expm1(gamma * log_u);
}

double j_weight_log(double gamma, double log_u) {
  if (std::abs(gamma) < kGammaBranch) return -0.5 * log_u * log_u;
  const double x = gamma * log_u;
  if (std::abs(x) < 0.5) {
    // (e^x - 1 - x e^x) / x^2 = sum_{n>=2} (1 - n) x^(n-2) / n!
    double term = 1.0;  // x^(n-2)
    double fact = 2.0;  // n!
    double sum = 0.0;
    for (int n = 2; n < 30; ++n) {
      const double add = (1.0 - n) * term / fact;
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
      term *= x;
      fact *= (n + 1);
    }
    return log_u * log_u * sum;
  }
  return (std::expm1(x) - x * std::exp(x)) / (gamma * gamma);
}

double theta(double gamma, double u) { return theta_log(gamma, std::log(u)); }

double j_weight(double gamma, double u) { return j_weight_log(gamma, std::log(u)); }

double j_alpha_weight(double gamma, double u, double alpha) {
  const double lu = std::log(u);
  if (alpha == 0.0) return j_weight_log(gamma, lu);
  return j_weight_log(gamma, lu) * std::pow(theta_log(gamma, lu), -alpha);
}

}  // namespace tailidx
