#include "tailidx/sim_harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

#include "tailidx/error.hpp"

namespace tailidx {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, count) on a small pool; the first exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Moments accumulated in replication order, so they are independent of scheduling.
struct Moments {
  std::size_t n = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double d) {
    ++n;
    sum += d;
    sum_sq += d * d;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : kNaN; }
  double mean_sq() const { return n ? sum_sq / static_cast<double>(n) : kNaN; }
};

bool alpha_free(EstimatorTag e) { return e == EstimatorTag::Hill || e == EstimatorTag::MB; }

double converged_or_nan(const EstimateResult& r) { return r.converged ? r.gamma_hat : kNaN; }

template <class F>
double guarded(F&& f) {
  try {
    return f();
  } catch (const Error&) {
    return kNaN;
  }
}

}  // namespace

std::vector<std::size_t> Scenario::default_k_grid() {
  std::vector<std::size_t> g;
  for (std::size_t k = 20; k <= 300; k += 20) g.push_back(k);
  return g;
}

void Scenario::validate() const {
  if (n < 3) throw ConfigError("n", "sample size must be at least 3");
  if (replications < 1) throw ConfigError("replications", "must be at least 1");
  if (k_grid.empty()) throw ConfigError("k_grid", "must not be empty");
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    const std::string field = "k_grid[" + std::to_string(i) + "]";
    if (k_grid[i] < 2) throw ConfigError(field, "k must be at least 2");
    if (k_grid[i] >= n) throw ConfigError(field, "k must be smaller than n");
    if (i > 0 && k_grid[i] <= k_grid[i - 1]) throw ConfigError(field, "k_grid must be strictly increasing");
  }
  if (alpha_set.empty()) throw ConfigError("alpha_set", "must not be empty");
  for (std::size_t i = 0; i < alpha_set.size(); ++i) {
    if (!(alpha_set[i] >= 0.0) || !std::isfinite(alpha_set[i])) {
      throw ConfigError("alpha_set[" + std::to_string(i) + "]", "alpha must be finite and non-negative");
    }
  }
  if (estimators.empty()) throw ConfigError("estimators", "must not be empty");
}

std::vector<SummaryRow> run_scenario(const Scenario& s, const RunOptions& opt) {
  s.validate();
  const std::size_t ne = s.estimators.size();
  const std::size_t na = s.alpha_set.size();
  const std::size_t nk = s.k_grid.size();
  const std::size_t cells = ne * na * nk;
  auto cell = [=](std::size_t e, std::size_t a, std::size_t k) { return (e * na + a) * nk + k; };

  const bool need_z = std::any_of(s.estimators.begin(), s.estimators.end(), [](EstimatorTag t) {
    return t == EstimatorTag::Hill || t == EstimatorTag::MDPDE_KL;
  });

  std::vector<std::vector<double>> estimates(s.replications);
  parallel_for(s.replications, opt.threads, [&](std::size_t r) {
    Stream rng(replication_seed(s.base_seed, r));
    const auto x = sample_contaminated(s.mixture, s.n, rng);
    std::vector<double> out(cells, kNaN);
    for (std::size_t ki = 0; ki < nk; ++ki) {
      const std::size_t k = s.k_grid[ki];
      std::optional<ScaledLogRatios> y;
      std::optional<LogExcesses> z;
      try {
        y = scaled_log_ratios(x, k);
      } catch (const Error&) {
      }
      if (need_z) {
        try {
          z = log_excesses(x, k);
        } catch (const Error&) {
        }
      }
      for (std::size_t ei = 0; ei < ne; ++ei) {
        const EstimatorTag tag = s.estimators[ei];
        for (std::size_t ai = 0; ai < na; ++ai) {
          if (alpha_free(tag) && ai > 0) {
            out[cell(ei, ai, ki)] = out[cell(ei, 0, ki)];
            continue;
          }
          DpdConfig cfg = opt.solver;
          cfg.alpha = s.alpha_set[ai];
          cfg.k = k;
          double g = kNaN;
          switch (tag) {
            case EstimatorTag::Hill:
              if (z) g = std::accumulate(z->z.begin(), z->z.end(), 0.0) / static_cast<double>(z->k);
              break;
            case EstimatorTag::MB:
              if (y) g = guarded([&] { return converged_or_nan(estimate_mb(*y, cfg)); });
              break;
            case EstimatorTag::MDPDE_ER:
              if (y) g = guarded([&] { return converged_or_nan(estimate_mdpde_er(*y, cfg)); });
              break;
            case EstimatorTag::MDPDE_KL:
              if (z) g = guarded([&] { return converged_or_nan(estimate_kl(*z, cfg)); });
              break;
          }
          out[cell(ei, ai, ki)] = g;
        }
      }
    }
    estimates[r] = std::move(out);
  });

  const double truth = s.true_gamma();
  std::vector<SummaryRow> rows;
  rows.reserve(cells);
  for (std::size_t ei = 0; ei < ne; ++ei) {
    for (std::size_t ai = 0; ai < na; ++ai) {
      for (std::size_t ki = 0; ki < nk; ++ki) {
        Moments m;
        for (const auto& rep : estimates) {
          const double g = rep[cell(ei, ai, ki)];
          if (std::isfinite(g)) m.add(g - truth);
        }
        rows.push_back(SummaryRow{s.estimators[ei], s.alpha_set[ai], s.k_grid[ki], m.mean(), m.mean_sq(), m.n});
      }
    }
  }
  return rows;
}

ScaledLogRatios sample_erm(double gamma, std::size_t k, Stream& rng) {
  if (k < 2) throw SizeError("k must be at least 2");
  std::vector<double> w(k - 1);
  for (std::size_t j = 1; j < k; ++j) {
    w[j - 1] = theta(gamma, static_cast<double>(j) / static_cast<double>(k + 1)) * rng.standard_exponential();
  }
  return ScaledLogRatios{std::move(w), k};
}

ErmOracleResult run_erm_oracle(double gamma, std::size_t k, double alpha, std::size_t replications,
                               std::uint64_t seed, const RunOptions& opt) {
  if (k < 10) throw DomainError("k must be at least 10");
  if (replications < 1) throw DomainError("replications must be at least 1");
  DpdConfig cfg = opt.solver;
  cfg.alpha = alpha;
  cfg.k = k;
  cfg.validate();

  std::vector<double> est(replications, kNaN);
  parallel_for(replications, opt.threads, [&](std::size_t r) {
    Stream rng(replication_seed(seed, r));
    const auto y = sample_erm(gamma, k, rng);
    est[r] = guarded([&] { return converged_or_nan(alpha == 0.0 ? estimate_mb(y, cfg) : estimate_mdpde_er(y, cfg)); });
  });

  Moments m;
  for (double g : est) {
    if (std::isfinite(g)) m.add(g - gamma);
  }
  ErmOracleResult out;
  out.row = SummaryRow{alpha == 0.0 ? EstimatorTag::MB : EstimatorTag::MDPDE_ER, alpha, k, m.mean(), m.mean_sq(), m.n};
  if (m.n >= 2) {
    const double mean = m.mean();
    double ss = 0.0;
    for (double g : est) {
      if (std::isfinite(g)) ss += (g - gamma - mean) * (g - gamma - mean);
    }
    out.scaled_variance = static_cast<double>(k - 1) * ss / static_cast<double>(m.n - 1);
  } else {
    out.scaled_variance = kNaN;
  }
  return out;
}

std::vector<Scenario> builtin_scenarios() {
  using D = DistributionSpec;
  const auto t2 = D::student_t(2.0);
  const auto t033 = D::student_t(1.0 / 3.0);
  const auto burr = D::burr(1, 1, 1);
  const auto frechet05 = D::frechet(0.5);
  const auto lognormal = D::lognormal();
  const auto weibull = D::weibull();
  const auto uniform = D::uniform01();
  const auto rburr = D::reversed_burr(1, 1, 1, 2.0);

  std::vector<Scenario> out;
  auto add = [&out](std::string name, MixtureSpec mix) {
    Scenario s(std::move(mix), std::move(name));
    if (!(s.true_gamma() > 0.0)) s.estimators = {EstimatorTag::MB, EstimatorTag::MDPDE_ER};
    out.push_back(std::move(s));
  };
  auto add_pair = [&add](const std::string& stem, const D& base, const D& contaminant) {
    add(stem + "_eps05", MixtureSpec(base, contaminant, 0.05));
    add(stem + "_eps15", MixtureSpec(base, contaminant, 0.15));
  };

  add("pure_t2_m1", MixtureSpec(t2));
  add("pure_burr_m2", MixtureSpec(burr));
  add("pure_frechet_m3", MixtureSpec(frechet05));
  add("pure_lognormal_m4", MixtureSpec(lognormal));
  add("pure_weibull_m5", MixtureSpec(weibull));
  add("pure_uniform_m6", MixtureSpec(uniform));
  add("pure_rburr_m7", MixtureSpec(rburr));

  add_pair("t2_by_t033", t2, t033);
  add_pair("frechet05_by_frechet3", frechet05, D::frechet(3.0));
  add_pair("burr_by_burr025", burr, D::burr(1, 0.25, 1));

  add_pair("lognormal_by_weibull", lognormal, weibull);
  add_pair("t2_by_frechet3", t2, D::frechet(3.0));

  add_pair("case_i_lognormal_by_t033", lognormal, t033);
  add_pair("case_ii_weibull_by_t033", weibull, t033);
  add_pair("case_iii_weibull_by_uniform", weibull, uniform);
  add_pair("case_iv_uniform_by_weibull", uniform, weibull);
  add_pair("case_v_uniform_by_t033", uniform, t033);
  add_pair("case_vi_rburr_by_burr4", rburr, D::burr(4, 0.25, 1));
  return out;
}

Scenario find_scenario(const std::string& name) {
  for (auto& s : builtin_scenarios()) {
    if (s.name == name) return s;
  }
  throw ConfigError("named", "unknown scenario '" + name + "'");
}

}  // namespace tailidx
