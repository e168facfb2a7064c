#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "tailidx/tail_transform.hpp"

namespace tailidx {

enum class EstimatorTag { Hill, MB, MDPDE_ER, MDPDE_KL };

std::string_view estimator_name(EstimatorTag tag);
/// Accepts "Hill", "MB", "MDPDE_ER", "MDPDE_KL" (case-insensitive).
EstimatorTag parse_estimator(std::string_view name);

struct DpdConfig {
  double alpha = 0.3;
  std::size_t k = 225;
  double search_lo = -5.0;
  double search_hi = 5.0;
  std::size_t grid_points = 201;
  double tol = 1e-8;
  std::size_t max_iter = 200;

  /// Throws DomainError on alpha < 0, lo >= hi, grid_points < 3 or tol <= 0.
  void validate() const;
};

struct EstimateResult {
  double gamma_hat = 0.0;
  /// NaN for Hill, which has no objective.
  double objective_at_solution = 0.0;
  bool converged = false;
  std::size_t n_roots_found = 0;
  EstimatorTag estimator_tag = EstimatorTag::MDPDE_ER;
  /// Incumbent objective along the local refinement of the selected minimum.
  std::vector<double> refinement_path;
};

/// Mean of the k log-excesses.
EstimateResult hill(std::span<const double> sample, std::size_t k);

/// H_k(gamma). For alpha = 0 this is the negative mean log-likelihood mean(log theta_j + Y_j / theta_j).
double mdpde_objective(const ScaledLogRatios& y, double gamma, double alpha);

/// sum_j J_alpha(u_j) [alpha theta_j / (1+alpha)^2 + (Y_j - theta_j) exp(-alpha Y_j / theta_j)].
double mdpde_estimating_fn(const ScaledLogRatios& y, double gamma, double alpha);

/// Global minimiser of H_k over [search_lo, search_hi]; cfg.k is ignored (y carries its own k).
EstimateResult estimate_mdpde_er(const ScaledLogRatios& y, const DpdConfig& cfg);

/// estimate_mdpde_er with alpha = 0.
EstimateResult estimate_mb(const ScaledLogRatios& y, const DpdConfig& cfg);

/// DPD objective of an i.i.d. Exp(gamma) fit to the log-excesses.
double kl_objective(const LogExcesses& z, double gamma, double alpha);

/// Kim-Lee comparator: minimiser of kl_objective over gamma in (0, search_hi]
/// (the sample mean when alpha = 0). Throws PositivityError if some Z_j <= 0.
EstimateResult estimate_kl(const LogExcesses& z, const DpdConfig& cfg);

/// Dispatch on the tag for a raw sample, using cfg.k extremes.
EstimateResult estimate(EstimatorTag tag, std::span<const double> sample, const DpdConfig& cfg);

}  // namespace tailidx
