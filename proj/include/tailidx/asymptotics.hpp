#pragma once

#include <cstddef>

#include "tailidx/quadrature.hpp"

namespace tailidx {

/// Limit law of sqrt(k-1) (gamma_hat - gamma): N(0, sigma2 / a^2).
struct AsymptoticVariance {
  double a = 0.0;
  double sigma2 = 0.0;
  double variance = 0.0;
  double gamma = 0.0;
  double alpha = 0.0;
};

/// (1+alpha^2)/(1+alpha)^3.
double a_coefficient(double alpha);
/// (1+4 alpha^2)/(1+2 alpha)^3 - alpha^2/(1+alpha)^4.
double sigma2_coefficient(double alpha);

/// a_coefficient(alpha) * int_0^1 J(u)^2 theta(gamma,u)^(2-alpha) du.
/// Throws QuadratureError when the integral does not converge (e.g. gamma < 0 with large alpha).
double a_gamma(double gamma, double alpha, const QuadratureOptions& opt = {});

/// sigma2_coefficient(alpha) * int_0^1 J(u)^2 theta(gamma,u)^(2-2 alpha) du.
double sigma2_gamma(double gamma, double alpha, const QuadratureOptions& opt = {});

AsymptoticVariance asymptotic_variance(double gamma, double alpha, const QuadratureOptions& opt = {});

/// Finite-k analogue of sigma2: sigma2_coefficient * mean_j J_alpha(u_j)^2 theta_j^2, u_j = j/(k+1).
double omega_k(double gamma, double alpha, std::size_t k);
/// Finite-k analogue of a: a_coefficient * mean_j J(u_j)^2 theta_j^(2-alpha).
double psi_k(double gamma, double alpha, std::size_t k);

}  // namespace tailidx
