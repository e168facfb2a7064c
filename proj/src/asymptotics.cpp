#include "tailidx/asymptotics.hpp"

#include <cmath>

#include "tailidx/error.hpp"
#include "tailidx/tail_transform.hpp"

namespace tailidx {

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a finite non-negative number");
}

// J(u)^2 theta^p, squared last so intermediate powers of theta do not overflow.
double weighted_square(double gamma, double u, double p) {
  const double lu = std::log(u);
  const double v = j_weight_log(gamma, lu) * std::pow(theta_log(gamma, lu), 0.5 * p);
  return v * v;
}

double theta_power_integral(double gamma, double p, const QuadratureOptions& opt) {
  return integrate_unit_interval([gamma, p](double u) { return weighted_square(gamma, u, p); }, opt).value;
}

double riemann_mean(double gamma, double p, std::size_t k) {
  if (k < 2) throw DomainError("k must be at least 2");
  double acc = 0.0;
  for (std::size_t j = 1; j < k; ++j) acc += weighted_square(gamma, static_cast<double>(j) / static_cast<double>(k + 1), p);
  return acc / static_cast<double>(k - 1);
}

}  // namespace

double a_coefficient(double alpha) { return (1.0 + alpha * alpha) / std::pow(1.0 + alpha, 3); }

double sigma2_coefficient(double alpha) {
  return (1.0 + 4.0 * alpha * alpha) / std::pow(1.0 + 2.0 * alpha, 3) - alpha * alpha / std::pow(1.0 + alpha, 4);
}

double a_gamma(double gamma, double alpha, const QuadratureOptions& opt) {
  check_alpha(alpha);
  return a_coefficient(alpha) * theta_power_integral(gamma, 2.0 - alpha, opt);
}

double sigma2_gamma(double gamma, double alpha, const QuadratureOptions& opt) {
  check_alpha(alpha);
  return sigma2_coefficient(alpha) * theta_power_integral(gamma, 2.0 - 2.0 * alpha, opt);
}

AsymptoticVariance asymptotic_variance(double gamma, double alpha, const QuadratureOptions& opt) {
  AsymptoticVariance v;
  v.gamma = gamma;
  v.alpha = alpha;
  v.a = a_gamma(gamma, alpha, opt);
  v.sigma2 = sigma2_gamma(gamma, alpha, opt);
  v.variance = v.sigma2 / (v.a * v.a);
  return v;
}

double omega_k(double gamma, double alpha, std::size_t k) {
  check_alpha(alpha);
  // (J theta^-alpha)^2 theta^2 = J^2 theta^(2 - 2 alpha).
  return sigma2_coefficient(alpha) * riemann_mean(gamma, 2.0 - 2.0 * alpha, k);
}

double psi_k(double gamma, double alpha, std::size_t k) {
  check_alpha(alpha);
  return a_coefficient(alpha) * riemann_mean(gamma, 2.0 - alpha, k);
}

}  // namespace tailidx
