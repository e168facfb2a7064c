#include "tailidx/distributions.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <utility>

#include <boost/math/distributions/students_t.hpp>

#include "tailidx/error.hpp"

namespace tailidx {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be a finite positive number");
  }
}

constexpr std::array<std::string_view, 7> kFamilyNames = {
    "student_t", "burr", "frechet", "lognormal", "weibull", "uniform01", "reversed_burr"};

// Burr(beta, tau, lambda) quantile at survival probability s.
double burr_survival_quantile(const family::Burr& p, double s) {
  // s^(-1/lambda) - 1 computed without cancellation for s near 1.
  const double excess = std::expm1(-std::log(s) / p.lambda);
  return std::pow(p.beta * excess, 1.0 / p.tau);
}

}  // namespace

DistributionSpec::DistributionSpec(Params params) : params_(std::move(params)) {
  std::visit(overloaded{
                 [](const family::StudentT& p) { require_positive(p.nu, "student_t.nu"); },
                 [](const family::Burr& p) {
                   require_positive(p.beta, "burr.beta");
                   require_positive(p.tau, "burr.tau");
                   require_positive(p.lambda, "burr.lambda");
                 },
                 [](const family::Frechet& p) { require_positive(p.gamma, "frechet.gamma"); },
                 [](const family::LogNormal&) {},
                 [](const family::Weibull& p) {
                   require_positive(p.lambda, "weibull.lambda");
                   require_positive(p.tau, "weibull.tau");
                 },
                 [](const family::Uniform01&) {},
                 [](const family::ReversedBurr& p) {
                   require_positive(p.beta, "reversed_burr.beta");
                   require_positive(p.tau, "reversed_burr.tau");
                   require_positive(p.lambda, "reversed_burr.lambda");
                   if (!std::isfinite(p.x_plus)) {
                     throw DomainError("reversed_burr.x_plus must be finite");
                   }
                 },
             },
             params_);
}

std::string DistributionSpec::label() const {
  std::ostringstream os;
  os << family_name(family());
  std::visit(overloaded{
                 [&](const family::StudentT& p) { os << '(' << p.nu << ')'; },
                 [&](const family::Burr& p) { os << '(' << p.beta << ',' << p.tau << ',' << p.lambda << ')'; },
                 [&](const family::Frechet& p) { os << '(' << p.gamma << ')'; },
                 [&](const family::LogNormal&) {},
                 [&](const family::Weibull& p) { os << '(' << p.lambda << ',' << p.tau << ')'; },
                 [&](const family::Uniform01&) {},
                 [&](const family::ReversedBurr& p) {
                   os << '(' << p.beta << ',' << p.tau << ',' << p.lambda << ",x+=" << p.x_plus << ')';
                 },
             },
             params_);
  return os.str();
}

bool operator==(const DistributionSpec& a, const DistributionSpec& b) { return a.params_ == b.params_; }

std::string_view family_name(Family f) { return kFamilyNames.at(static_cast<std::size_t>(f)); }

Family parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i) {
    if (kFamilyNames[i] == name) return static_cast<Family>(i);
  }
  throw DomainError("unknown distribution family '" + std::string(name) + "'");
}

double true_tail_index(const DistributionSpec& spec) {
  return std::visit(overloaded{
                        [](const family::StudentT& p) { return 1.0 / p.nu; },
                        [](const family::Burr& p) { return 1.0 / (p.tau * p.lambda); },
                        [](const family::Frechet& p) { return p.gamma; },
                        [](const family::LogNormal&) { return 0.0; },
                        [](const family::Weibull&) { return 0.0; },
                        [](const family::Uniform01&) { return -1.0; },
                        [](const family::ReversedBurr& p) { return -1.0 / (p.tau * p.lambda); },
                    },
                    spec.params());
}

double cdf(const DistributionSpec& spec, double x) {
  return std::visit(
      overloaded{
          [x](const family::StudentT& p) {
            return boost::math::cdf(boost::math::students_t_distribution<double>(p.nu), x);
          },
          [x](const family::Burr& p) {
            if (x <= 0.0) return 0.0;
            return -std::expm1(-p.lambda * std::log1p(std::pow(x, p.tau) / p.beta));
          },
          [x](const family::Frechet& p) {
            if (x <= 0.0) return 0.0;
            return std::exp(-std::pow(x, -1.0 / p.gamma));
          },
          [x](const family::LogNormal&) {
            if (x <= 0.0) return 0.0;
            return 0.5 * std::erfc(-std::log(x) / std::sqrt(2.0));
          },
          [x](const family::Weibull& p) {
            if (x <= 0.0) return 0.0;
            return -std::expm1(-p.lambda * std::pow(x, p.tau));
          },
          [x](const family::Uniform01&) { return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x); },
          [x](const family::ReversedBurr& p) {
            if (x >= p.x_plus) return 1.0;
            const double survival = std::exp(-p.lambda * std::log1p(std::pow(p.x_plus - x, -p.tau) / p.beta));
            return 1.0 - survival;
          },
      },
      spec.params());
}

std::vector<double> sample(const DistributionSpec& spec, std::size_t n, Stream& rng) {
  if (n == 0) throw DomainError("sample size must be at least 1");
  std::vector<double> out(n);
  std::visit(overloaded{
                 [&](const family::StudentT& p) {
                   // Z / sqrt(V / nu) with V ~ chi^2_nu = 2 Gamma(nu / 2), in log space so
                   // fractional nu far below 1 does not underflow V.
                   for (auto& x : out) {
                     const double z = rng.standard_normal();
                     const double log_v = std::log(2.0) + rng.log_gamma_variate(0.5 * p.nu);
                     x = z * std::exp(-0.5 * (log_v - std::log(p.nu)));
                   }
                 },
                 [&](const family::Burr& p) {
                   for (auto& x : out) x = burr_survival_quantile(p, rng.uniform());
                 },
                 [&](const family::Frechet& p) {
                   for (auto& x : out) x = std::pow(-std::log(rng.uniform()), -p.gamma);
                 },
                 [&](const family::LogNormal&) {
                   for (auto& x : out) x = std::exp(rng.standard_normal());
                 },
                 [&](const family::Weibull& p) {
                   for (auto& x : out) x = std::pow(-std::log(rng.uniform()) / p.lambda, 1.0 / p.tau);
                 },
                 [&](const family::Uniform01&) {
                   for (auto& x : out) x = rng.uniform();
                 },
                 [&](const family::ReversedBurr& p) {
                   const family::Burr b{p.beta, p.tau, p.lambda};
                   for (auto& x : out) x = p.x_plus - 1.0 / burr_survival_quantile(b, rng.uniform());
                 },
             },
             spec.params());
  return out;
}

MixtureSpec::MixtureSpec(DistributionSpec base_, DistributionSpec contaminant_, double epsilon_)
    : base(std::move(base_)), contaminant(std::move(contaminant_)), epsilon(epsilon_) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw DomainError("contamination proportion must lie in [0, 1)");
  }
}

MixtureSpec::MixtureSpec(DistributionSpec base_) : MixtureSpec(base_, base_, 0.0) {}

std::size_t MixtureSpec::contaminated_count(std::size_t n) const noexcept {
  return static_cast<std::size_t>(std::llround(epsilon * static_cast<double>(n)));
}

std::vector<double> sample_contaminated(const MixtureSpec& mix, std::size_t n, Stream& rng) {
  const std::size_t m = mix.contaminated_count(n);
  if (m == 0) return sample(mix.base, n, rng);

  std::vector<double> out;
  out.reserve(n);
  if (m < n) out = sample(mix.base, n - m, rng);
  const auto extra = sample(mix.contaminant, m, rng);
  out.insert(out.end(), extra.begin(), extra.end());
  // Fisher-Yates.
  for (std::size_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_index(i + 1));
    std::swap(out[i], out[j]);
  }
  return out;
}

}  // namespace tailidx
