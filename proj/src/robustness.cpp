#include "tailidx/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tailidx/error.hpp"
#include "tailidx/tail_transform.hpp"

namespace tailidx {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check(std::size_t k, double alpha) {
  if (k < 2) throw DomainError("k must be at least 2");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a finite non-negative number");
}

void check_direction(std::size_t j0, std::size_t k) {
  if (j0 < 1 || j0 + 1 > k) throw DomainError("j0 must lie in 1..k-1 (got " + std::to_string(j0) + ")");
}

double prefactor(double alpha) { return std::pow(1.0 + alpha, 3) / (1.0 + alpha * alpha); }

double u_of(std::size_t j, std::size_t k) { return static_cast<double>(j) / static_cast<double>(k + 1); }

// (t - theta) e^(-alpha t / theta) + alpha theta / (1 + alpha)
double bracket(double t, double th, double alpha) {
  return (t - th) * std::exp(-alpha * t / th) + alpha * th / (1.0 + alpha);
}

}  // namespace

std::string_view psi_family_name(PsiFamily f) {
  return f == PsiFamily::Constant ? "constant" : "theta_proportional";
}

PsiFamily parse_psi_family(std::string_view name) {
  if (name == "constant") return PsiFamily::Constant;
  if (name == "theta_proportional" || name == "theta") return PsiFamily::ThetaProportional;
  throw DomainError("unknown psi family '" + std::string(name) + "'");
}

double psi_value(PsiFamily f, double t, double gamma, double u) {
  return f == PsiFamily::Constant ? t : t * theta(gamma, u);
}

double if_denominator(std::size_t k, double gamma, double alpha) {
  check(k, alpha);
  double d = 0.0;
  for (std::size_t j = 1; j < k; ++j) {
    const double lu = std::log(u_of(j, k));
    const double v = j_weight_log(gamma, lu) * std::pow(theta_log(gamma, lu), 1.0 - 0.5 * alpha);
    d += v * v;
  }
  return d;
}

double if_single(double t0, std::size_t j0, std::size_t k, double gamma, double alpha) {
  check(k, alpha);
  check_direction(j0, k);
  const double u = u_of(j0, k);
  const double th = theta(gamma, u);
  return prefactor(alpha) * j_alpha_weight(gamma, u, alpha) * bracket(t0, th, alpha) / if_denominator(k, gamma, alpha);
}

double if_single_limit(std::size_t j0, std::size_t k, double gamma, double alpha) {
  check(k, alpha);
  check_direction(j0, k);
  const double u = u_of(j0, k);
  const double jw = j_weight(gamma, u);
  if (alpha == 0.0) return jw == 0.0 ? 0.0 : std::copysign(kInf, jw);
  const double th = theta(gamma, u);
  return prefactor(alpha) * j_alpha_weight(gamma, u, alpha) * (alpha * th / (1.0 + alpha)) /
         if_denominator(k, gamma, alpha);
}

double if_all(std::span<const double> t_vec, std::size_t k, double gamma, double alpha) {
  check(k, alpha);
  if (t_vec.size() + 1 != k) throw DomainError("t_vec must have k-1 entries");
  double num = 0.0;
  for (std::size_t j = 1; j < k; ++j) {
    const double u = u_of(j, k);
    num += j_alpha_weight(gamma, u, alpha) * bracket(t_vec[j - 1], theta(gamma, u), alpha);
  }
  return prefactor(alpha) * num / if_denominator(k, gamma, alpha);
}

double ges_analytic_candidates(std::size_t j0, std::size_t k, double gamma, double alpha) {
  check(k, alpha);
  check_direction(j0, k);
  if (alpha == 0.0) return kInf;
  const double th = theta(gamma, u_of(j0, k));
  const double at_zero = std::abs(if_single(0.0, j0, k, gamma, alpha));
  const double at_stationary = std::abs(if_single(th * (1.0 + alpha) / alpha, j0, k, gamma, alpha));
  const double at_inf = std::abs(if_single_limit(j0, k, gamma, alpha));
  return std::max({at_zero, at_stationary, at_inf});
}

double ges_argmax(std::size_t j0, std::size_t k, double gamma, double alpha) {
  check(k, alpha);
  check_direction(j0, k);
  if (alpha == 0.0) return kInf;
  const double th = theta(gamma, u_of(j0, k));
  const double stationary = th * (1.0 + alpha) / alpha;
  const double at_zero = std::abs(if_single(0.0, j0, k, gamma, alpha));
  const double at_stationary = std::abs(if_single(stationary, j0, k, gamma, alpha));
  const double at_inf = std::abs(if_single_limit(j0, k, gamma, alpha));
  if (at_zero >= at_stationary && at_zero >= at_inf) return 0.0;
  return at_stationary >= at_inf ? stationary : kInf;
}

double gross_error_sensitivity(std::size_t j0, std::size_t k, double gamma, double alpha) {
  double best = ges_analytic_candidates(j0, k, gamma, alpha);
  if (std::isinf(best)) return best;
  // Confirming scan; by construction it cannot exceed the candidates.
  constexpr int kGrid = 400;
  const double lo = std::log(1e-3);
  const double hi = std::log(1e6);
  for (int i = 0; i < kGrid; ++i) {
    const double t0 = std::exp(lo + (hi - lo) * i / (kGrid - 1));
    best = std::max(best, std::abs(if_single(t0, j0, k, gamma, alpha)));
  }
  return best;
}

double ges_closed_form(std::size_t j0, std::size_t k, double gamma, double alpha) {
  check(k, alpha);
  check_direction(j0, k);
  if (alpha == 0.0) return kInf;
  const double u = u_of(j0, k);
  const double c = std::pow(1.0 + alpha, 2) * (std::exp(-(1.0 + alpha)) + alpha * alpha) / ((1.0 + alpha * alpha) * alpha);
  return c * std::abs(j_weight(gamma, u)) * std::pow(theta(gamma, u), 1.0 - alpha) / if_denominator(k, gamma, alpha);
}

double asymptotic_if_single(double, std::size_t, double, double) { return 0.0; }

double asymptotic_if_all(double t, PsiFamily psi, double gamma, double alpha, const QuadratureOptions& opt) {
  if (gamma == 0.0) throw DomainError("asymptotic_if_all is defined for gamma != 0 only");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a finite non-negative number");
  const auto num = integrate_unit_interval(
      [&](double u) {
        const double lu = std::log(u);
        const double th = theta_log(gamma, lu);
        const double w = alpha == 0.0 ? 1.0 : std::pow(th, -alpha);
        return j_weight_log(gamma, lu) * w * bracket(psi_value(psi, t, gamma, u), th, alpha);
      },
      opt);
  const auto den = integrate_unit_interval(
      [&](double u) {
        const double lu = std::log(u);
        const double v = j_weight_log(gamma, lu) * std::pow(theta_log(gamma, lu), 1.0 - 0.5 * alpha);
        return v * v;
      },
      opt);
  return prefactor(alpha) * num.value / den.value;
}

}  // namespace tailidx
