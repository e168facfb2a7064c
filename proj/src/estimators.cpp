#include "tailidx/estimators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tailidx/error.hpp"
#include "tailidx/solver.hpp"

namespace tailidx {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kKlGammaFloor = 1e-3;

// H_k and its estimating function with the log u_j cached once per data set.
class ErmObjective {
 public:
  ErmObjective(const ScaledLogRatios& y, double alpha) : y_(y.y), alpha_(alpha), log_u_(y.y.size()) {
    if (y.y.empty()) throw SizeError("no scaled log-ratios");
    const double denom = static_cast<double>(y.y.size() + 2);  // k + 1
    for (std::size_t j = 0; j < log_u_.size(); ++j) log_u_[j] = std::log(static_cast<double>(j + 1) / denom);
  }

  double operator()(double gamma, double* score) const {
    const double a = alpha_;
    double h = 0.0;
    double s = 0.0;
    if (a == 0.0) {
      for (std::size_t j = 0; j < y_.size(); ++j) {
        const double th = theta_log(gamma, log_u_[j]);
        h += std::log(th) + y_[j] / th;
        if (score) s += j_weight_log(gamma, log_u_[j]) * (y_[j] - th);
      }
    } else {
      const double c1 = 1.0 / (1.0 + a);
      const double c2 = (1.0 + a) / a;
      const double c3 = a / ((1.0 + a) * (1.0 + a));
      for (std::size_t j = 0; j < y_.size(); ++j) {
        const double th = theta_log(gamma, log_u_[j]);
        const double w = std::exp(-a * std::log(th));
        const double e = std::exp(-a * y_[j] / th);
        h += w * (c1 - c2 * e);
        if (score) s += j_weight_log(gamma, log_u_[j]) * w * (c3 * th + (y_[j] - th) * e);
      }
    }
    if (score) *score = s;
    return h / static_cast<double>(y_.size());
  }

 private:
  const std::vector<double>& y_;
  double alpha_;
  std::vector<double> log_u_;
};

MinimizeOptions options_from(const DpdConfig& cfg) {
  return MinimizeOptions{cfg.search_lo, cfg.search_hi, cfg.grid_points, cfg.tol, cfg.max_iter};
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::string_view estimator_name(EstimatorTag tag) {
  switch (tag) {
    case EstimatorTag::Hill: return "Hill";
    case EstimatorTag::MB: return "MB";
    case EstimatorTag::MDPDE_ER: return "MDPDE_ER";
    case EstimatorTag::MDPDE_KL: return "MDPDE_KL";
  }
  return "?";
}

EstimatorTag parse_estimator(std::string_view name) {
  const auto u = upper(name);
  if (u == "HILL") return EstimatorTag::Hill;
  if (u == "MB") return EstimatorTag::MB;
  if (u == "MDPDE_ER" || u == "MDPDE") return EstimatorTag::MDPDE_ER;
  if (u == "MDPDE_KL" || u == "KL") return EstimatorTag::MDPDE_KL;
  throw DomainError("unknown estimator '" + std::string(name) + "'");
}

void DpdConfig::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("alpha must be a finite non-negative number");
  if (!(search_lo < search_hi)) throw DomainError("search_lo must be smaller than search_hi");
  if (grid_points < 3) throw DomainError("grid_points must be at least 3");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (max_iter < 1) throw DomainError("max_iter must be at least 1");
}

EstimateResult hill(std::span<const double> sample, std::size_t k) {
  const auto z = log_excesses(sample, k);
  EstimateResult r;
  r.gamma_hat = std::accumulate(z.z.begin(), z.z.end(), 0.0) / static_cast<double>(z.k);
  r.objective_at_solution = kNaN;
  r.converged = true;
  r.estimator_tag = EstimatorTag::Hill;
  return r;
}

double mdpde_objective(const ScaledLogRatios& y, double gamma, double alpha) {
  return ErmObjective(y, alpha)(gamma, nullptr);
}

double mdpde_estimating_fn(const ScaledLogRatios& y, double gamma, double alpha) {
  double s = 0.0;
  ErmObjective(y, alpha)(gamma, &s);
  return s;
}

EstimateResult estimate_mdpde_er(const ScaledLogRatios& y, const DpdConfig& cfg) {
  cfg.validate();
  const ErmObjective obj(y, cfg.alpha);
  const auto m = grid_golden_minimize([&obj](double g, double* s) { return obj(g, s); }, options_from(cfg), true);
  EstimateResult r;
  r.gamma_hat = m.x;
  r.objective_at_solution = m.value;
  r.converged = m.converged;
  r.n_roots_found = m.sign_changes;
  r.estimator_tag = EstimatorTag::MDPDE_ER;
  r.refinement_path = m.path;
  return r;
}

EstimateResult estimate_mb(const ScaledLogRatios& y, const DpdConfig& cfg) {
  DpdConfig c = cfg;
  c.alpha = 0.0;
  auto r = estimate_mdpde_er(y, c);
  r.estimator_tag = EstimatorTag::MB;
  return r;
}

double kl_objective(const LogExcesses& z, double gamma, double alpha) {
  if (z.z.empty()) throw SizeError("no log-excesses");
  const double n = static_cast<double>(z.z.size());
  if (alpha == 0.0) {
    // Negative mean exponential log-likelihood.
    const double mean = std::accumulate(z.z.begin(), z.z.end(), 0.0) / n;
    return std::log(gamma) + mean / gamma;
  }
  double acc = 0.0;
  for (double v : z.z) acc += std::exp(-alpha * v / gamma);
  return std::pow(gamma, -alpha) * (1.0 / (1.0 + alpha) - (1.0 + alpha) / alpha * acc / n);
}

EstimateResult estimate_kl(const LogExcesses& z, const DpdConfig& cfg) {
  cfg.validate();
  if (z.z.empty()) throw SizeError("no log-excesses");
  for (double v : z.z) {
    if (!(v > 0.0)) throw PositivityError("log-excesses must be positive");
  }
  EstimateResult r;
  r.estimator_tag = EstimatorTag::MDPDE_KL;
  if (cfg.alpha == 0.0) {
    r.gamma_hat = std::accumulate(z.z.begin(), z.z.end(), 0.0) / static_cast<double>(z.z.size());
    r.objective_at_solution = kl_objective(z, r.gamma_hat, 0.0);
    r.converged = true;
    return r;
  }
  if (!(cfg.search_hi > kKlGammaFloor)) {
    throw DomainError("the Kim-Lee search needs search_hi > " + std::to_string(kKlGammaFloor));
  }
  // Scan in log gamma so that the grid is scale-free.
  MinimizeOptions opt = options_from(cfg);
  opt.lo = std::log(kKlGammaFloor);
  opt.hi = std::log(cfg.search_hi);
  const double alpha = cfg.alpha;
  const auto m = grid_golden_minimize(
      [&](double t, double*) { return kl_objective(z, std::exp(t), alpha); }, opt, false);
  r.gamma_hat = std::exp(m.x);
  r.objective_at_solution = m.value;
  r.converged = m.converged;
  r.refinement_path = m.path;
  return r;
}

EstimateResult estimate(EstimatorTag tag, std::span<const double> sample, const DpdConfig& cfg) {
  switch (tag) {
    case EstimatorTag::Hill: return hill(sample, cfg.k);
    case EstimatorTag::MB: return estimate_mb(scaled_log_ratios(sample, cfg.k), cfg);
    case EstimatorTag::MDPDE_ER: return estimate_mdpde_er(scaled_log_ratios(sample, cfg.k), cfg);
    case EstimatorTag::MDPDE_KL: return estimate_kl(log_excesses(sample, cfg.k), cfg);
  }
  throw DomainError("unknown estimator");
}

}  // namespace tailidx
