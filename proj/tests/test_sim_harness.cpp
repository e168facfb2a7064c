#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

#include "tailidx/error.hpp"
#include "tailidx/sim_harness.hpp"

using namespace tailidx;

namespace {

Scenario small(MixtureSpec mix) {
  Scenario s(std::move(mix), "small");
  s.replications = 8;
  s.k_grid = {40, 120};
  s.alpha_set = {0.0, 0.5};
  return s;
}

bool same_rows(const std::vector<SummaryRow>& a, const std::vector<SummaryRow>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a[i];
    const auto& y = b[i];
    if (x.estimator != y.estimator || x.alpha != y.alpha || x.k != y.k || x.n_converged != y.n_converged) return false;
    // Bit-for-bit, NaN included.
    if (std::memcmp(&x.bias, &y.bias, sizeof(double)) || std::memcmp(&x.mse, &y.mse, sizeof(double))) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("defaults follow the simulation protocol") {
  const Scenario s(MixtureSpec(DistributionSpec::burr(1, 1, 1)));
  CHECK(s.n == 500);
  CHECK(s.replications == 100);
  CHECK(s.k_grid.front() == 20);
  CHECK(s.k_grid.back() == 300);
  CHECK(s.k_grid.size() == 15);
  CHECK(s.true_gamma() == 1.0);
}

TEST_CASE("Hill on pure Burr") {
  Scenario s(MixtureSpec(DistributionSpec::burr(1, 1, 1)));
  s.estimators = {EstimatorTag::Hill};
  s.k_grid = {100};
  s.alpha_set = {0.0};
  const auto rows = run_scenario(s);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].n_converged == 100);
  CHECK(std::abs(rows[0].bias) < 0.15);
  CHECK(rows[0].mse < 0.1);
}

TEST_CASE("single replication moments") {
  Scenario s = small(MixtureSpec(DistributionSpec::frechet(0.5)));
  s.replications = 1;
  s.base_seed = 12345;
  const auto rows = run_scenario(s);
  Stream rng(replication_seed(12345, 0));
  const auto x = sample(DistributionSpec::frechet(0.5), 500, rng);
  for (const auto& r : rows) {
    DpdConfig cfg;
    cfg.alpha = r.alpha;
    cfg.k = r.k;
    const double g = estimate(r.estimator, x, cfg).gamma_hat;
    CHECK(r.bias == doctest::Approx(g - 0.5).epsilon(1e-15));
    CHECK(r.mse == r.bias * r.bias);
  }
}

TEST_CASE("rows cover the cross product in order") {
  const auto s = small(MixtureSpec(DistributionSpec::student_t(2), DistributionSpec::student_t(1.0 / 3), 0.15));
  const auto rows = run_scenario(s);
  REQUIRE(rows.size() == 4 * 2 * 2);
  CHECK(rows[0].estimator == EstimatorTag::Hill);
  CHECK(rows[0].k == 40);
  CHECK(rows[1].k == 120);
  CHECK(rows[2].alpha == 0.5);
  CHECK(rows.back().estimator == EstimatorTag::MDPDE_KL);
  for (const auto& r : rows) CHECK(r.mse >= r.bias * r.bias);
  // Hill ignores alpha.
  CHECK(rows[0].bias == rows[2].bias);
}

TEST_CASE("determinism, thread independence and seed isolation") {
  auto s = small(MixtureSpec(DistributionSpec::burr(1, 1, 1), DistributionSpec::burr(1, 0.25, 1), 0.05));
  RunOptions one;
  one.threads = 1;
  RunOptions four;
  four.threads = 4;
  const auto a = run_scenario(s, one);
  CHECK(same_rows(a, run_scenario(s, one)));
  CHECK(same_rows(a, run_scenario(s, four)));

  auto only_er = s;
  only_er.estimators = {EstimatorTag::MDPDE_ER};
  const auto er = run_scenario(only_er, one);
  std::vector<SummaryRow> er_from_full;
  for (const auto& r : a) {
    if (r.estimator == EstimatorTag::MDPDE_ER) er_from_full.push_back(r);
  }
  CHECK(same_rows(er, er_from_full));

  auto other_seed = s;
  other_seed.base_seed += 1;
  CHECK_FALSE(same_rows(a, run_scenario(other_seed, one)));
}

TEST_CASE("failures are excluded and counted") {
  // Negative data: log-excesses are undefined, so Hill/Kim-Lee fits fail for every replication.
  auto s = small(MixtureSpec(DistributionSpec::reversed_burr(1, 1, 1, -5.0)));
  const auto rows = run_scenario(s);
  for (const auto& r : rows) {
    if (r.estimator == EstimatorTag::Hill || r.estimator == EstimatorTag::MDPDE_KL) {
      CHECK(r.n_converged == 0);
      CHECK(std::isnan(r.bias));
    } else {
      CHECK(r.n_converged == s.replications);
    }
  }
}

TEST_CASE("scenario validation") {
  Scenario s(MixtureSpec(DistributionSpec::uniform01()));
  s.k_grid = {100, 500};
  try {
    s.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "k_grid[1]");
  }
  s.k_grid = {100, 50};
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.k_grid = {100};
  s.replications = 0;
  CHECK_THROWS_AS(s.validate(), ConfigError);
  s.replications = 1;
  s.alpha_set = {-1};
  CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("exact-model oracle") {
  RunOptions opt;
  const auto r = run_erm_oracle(0.0, 500, 0.3, 100, 7, opt);
  CHECK(r.row.n_converged == 100);
  CHECK(std::abs(r.row.bias) < 0.1);
  CHECK(r.scaled_variance > 0);
  CHECK_THROWS_AS(run_erm_oracle(0.0, 5, 0.3, 10, 7, opt), DomainError);

  // One replication: the oracle is a plain estimate on the same simulated data.
  const auto one = run_erm_oracle(0.5, 200, 0.0, 1, 3, opt);
  Stream rng(replication_seed(3, 0));
  const auto y = sample_erm(0.5, 200, rng);
  CHECK(one.row.bias == doctest::Approx(estimate_mb(y, DpdConfig{}).gamma_hat - 0.5).epsilon(1e-15));
  CHECK(one.row.mse == one.row.bias * one.row.bias);
}

TEST_CASE("exact-model sampler") {
  Stream rng(1);
  double acc = 0;
  const std::size_t k = 2001;
  std::size_t count = 0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto y = sample_erm(-0.7, k, rng);
    REQUIRE(y.y.size() == k - 1);
    for (std::size_t j = 1; j < k; ++j) acc += y.y[j - 1] / theta(-0.7, static_cast<double>(j) / (k + 1)), ++count;
  }
  CHECK(acc / count == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("scenario catalog") {
  const auto all = builtin_scenarios();
  std::set<std::string> names;
  for (const auto& s : all) {
    CHECK(names.insert(s.name).second);
    CHECK_NOTHROW(s.validate());
    CHECK(s.k_grid == Scenario::default_k_grid());
    CHECK(s.k_grid.back() < s.n);
    if (s.name.rfind("pure_", 0) == 0) {
      CHECK(s.mixture.epsilon == 0.0);
    } else {
      CHECK((s.mixture.epsilon == 0.05 || s.mixture.epsilon == 0.15));
    }
    if (s.true_gamma() <= 0) {
      CHECK(std::find(s.estimators.begin(), s.estimators.end(), EstimatorTag::Hill) == s.estimators.end());
    }
  }
  CHECK(names.size() == 7 + 2 * 11);
  const auto vi = find_scenario("case_vi_rburr_by_burr4_eps15");
  CHECK(vi.mixture.contaminant == DistributionSpec::burr(4, 0.25, 1));
  CHECK(vi.mixture.base == DistributionSpec::reversed_burr(1, 1, 1, 2.0));
  CHECK(vi.true_gamma() == -1.0);
  CHECK(find_scenario("t2_by_t033_eps15").mixture.contaminant == DistributionSpec::student_t(1.0 / 3.0));
  CHECK_THROWS_AS(find_scenario("nope"), ConfigError);
}
