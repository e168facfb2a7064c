#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "tailidx/quadrature.hpp"

namespace tailidx {

/// Unbounded contamination profiles t_j = psi(t, u_j) for the all-direction limit.
enum class PsiFamily {
  Constant,           ///< psi(t, u) = t
  ThetaProportional,  ///< psi(t, u) = t theta(gamma, u)
};

std::string_view psi_family_name(PsiFamily f);
PsiFamily parse_psi_family(std::string_view name);
double psi_value(PsiFamily f, double t, double gamma, double u);

/// sum_{j=1}^{k-1} theta_j^(2-alpha) J(u_j)^2.
double if_denominator(std::size_t k, double gamma, double alpha);

/// Fixed-sample influence function at the model for contamination t0 >= 0 of Y_{j0}.
/// Throws DomainError unless 1 <= j0 <= k-1 and alpha >= 0.
double if_single(double t0, std::size_t j0, std::size_t k, double gamma, double alpha);

/// lim_{t0 -> inf} if_single; infinite (signed) for alpha = 0.
double if_single_limit(std::size_t j0, std::size_t k, double gamma, double alpha);

/// Contamination of every Y_j; t_vec has k-1 entries.
double if_all(std::span<const double> t_vec, std::size_t k, double gamma, double alpha);

/// sup_{t0 >= 0} |if_single|: the max over t0 = 0, the stationary point theta(1+alpha)/alpha,
/// the t0 -> inf limit and a log grid on [1e-3, 1e6]. +inf for alpha = 0.
double gross_error_sensitivity(std::size_t j0, std::size_t k, double gamma, double alpha);

/// Location t0 of the sensitivity: 0, the stationary point, or +inf for the plateau (and for alpha = 0).
double ges_argmax(std::size_t j0, std::size_t k, double gamma, double alpha);

/// Max of |if_single| over the three analytic candidates only (no grid).
double ges_analytic_candidates(std::size_t j0, std::size_t k, double gamma, double alpha);

/// The closed form printed alongside the sensitivity definition, kept for comparison:
/// (1+alpha)^2 (e^-(1+alpha) + alpha^2) / ((1+alpha^2) alpha) * |J(u_j0)| theta_j0^(1-alpha) / D.
double ges_closed_form(std::size_t j0, std::size_t k, double gamma, double alpha);

/// k -> inf limit of if_single for fixed j0: identically 0.
double asymptotic_if_single(double t0, std::size_t j0, double gamma, double alpha);

/// k -> inf limit of if_all with t_j = psi(t, u_j):
/// c(alpha) int J theta^-alpha [(psi - theta) e^(-alpha psi/theta) + alpha theta/(1+alpha)] du / int J^2 theta^(2-alpha) du.
/// Throws DomainError for gamma = 0, QuadratureError if an integral fails.
double asymptotic_if_all(double t, PsiFamily psi, double gamma, double alpha, const QuadratureOptions& opt = {});

}  // namespace tailidx
