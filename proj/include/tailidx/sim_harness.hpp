#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tailidx/distributions.hpp"
#include "tailidx/estimators.hpp"
#include "tailidx/tail_transform.hpp"

namespace tailidx {

struct Scenario {
  std::string name;
  MixtureSpec mixture;
  std::size_t n = 500;
  std::size_t replications = 100;
  std::vector<std::size_t> k_grid = default_k_grid();
  std::vector<double> alpha_set = {0.0, 0.3, 0.5, 1.0};
  std::vector<EstimatorTag> estimators = {EstimatorTag::Hill, EstimatorTag::MB, EstimatorTag::MDPDE_ER,
                                          EstimatorTag::MDPDE_KL};
  std::uint64_t base_seed = 20240601;

  explicit Scenario(MixtureSpec m, std::string scenario_name = {})
      : name(std::move(scenario_name)), mixture(std::move(m)) {}

  double true_gamma() const { return true_tail_index(mixture.base); }
  /// Throws ConfigError naming the offending field.
  void validate() const;

  static std::vector<std::size_t> default_k_grid();

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

struct SummaryRow {
  EstimatorTag estimator = EstimatorTag::MB;
  /// Hill and MB ignore alpha; their rows repeat across alpha_set.
  double alpha = 0.0;
  std::size_t k = 0;
  double bias = 0.0;
  double mse = 0.0;
  std::size_t n_converged = 0;
};

struct RunOptions {
  /// 0 = one worker per hardware thread.
  unsigned threads = 0;
  /// Solver settings other than alpha/k, which come from the scenario.
  DpdConfig solver{};
};

/// Every (estimator, alpha, k) of the scenario on the same per-replication sample,
/// replication r seeded with replication_seed(base_seed, r). Failed or non-converged
/// fits are excluded from the moments and reflected in n_converged. Rows are ordered
/// by estimator, then alpha, then k, as listed in the scenario. Results do not depend
/// on the thread count.
std::vector<SummaryRow> run_scenario(const Scenario& s, const RunOptions& opt = {});

/// W_j ~ Exp(theta(gamma, j/(k+1))), j = 1..k-1.
ScaledLogRatios sample_erm(double gamma, std::size_t k, Stream& rng);

struct ErmOracleResult {
  SummaryRow row;
  /// Sample variance of sqrt(k-1) (gamma_hat - gamma) over converged replications.
  double scaled_variance = 0.0;
};

/// MDPDE (MB when alpha = 0) on simulated exact-ERM data.
ErmOracleResult run_erm_oracle(double gamma, std::size_t k, double alpha, std::size_t replications,
                               std::uint64_t seed, const RunOptions& opt = {});

/// The named experiments: pure M1-M7, same-family and cross-family contaminations at 5% and 15%.
std::vector<Scenario> builtin_scenarios();
/// Throws ConfigError if no scenario has that name.
Scenario find_scenario(const std::string& name);

}  // namespace tailidx
