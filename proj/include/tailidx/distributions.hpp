#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tailidx/rng.hpp"

namespace tailidx {

// Model families with known tail index. Parameter names follow the usual
// parametrisations of the survival / distribution functions:
//   Burr:          P(X > x) = (1 + x^tau / beta)^(-lambda)
//   Frechet:       P(X <= x) = exp(-x^(-1/gamma))
//   Weibull:       P(X > x) = exp(-lambda x^tau)
//   ReversedBurr:  P(X > x) = (1 + (x_plus - x)^(-tau) / beta)^(-lambda),  x < x_plus
namespace family {
struct StudentT {
  double nu;
  bool operator==(const StudentT&) const = default;
};
struct Burr {
  double beta, tau, lambda;
  bool operator==(const Burr&) const = default;
};
struct Frechet {
  double gamma;
  bool operator==(const Frechet&) const = default;
};
struct LogNormal {
  bool operator==(const LogNormal&) const = default;
};
struct Weibull {
  double lambda = 1.0, tau = 2.0;
  bool operator==(const Weibull&) const = default;
};
struct Uniform01 {
  bool operator==(const Uniform01&) const = default;
};
struct ReversedBurr {
  double beta, tau, lambda;
  double x_plus = 2.0;
  bool operator==(const ReversedBurr&) const = default;
};
}  // namespace family

enum class Family { StudentT, Burr, Frechet, LogNormal, Weibull, Uniform01, ReversedBurr };

/// One of the seven samplable models. Parameters are validated on construction.
class DistributionSpec {
 public:
  using Params = std::variant<family::StudentT, family::Burr, family::Frechet, family::LogNormal,
                              family::Weibull, family::Uniform01, family::ReversedBurr>;

  explicit DistributionSpec(Params params);

  static DistributionSpec student_t(double nu) { return DistributionSpec(family::StudentT{nu}); }
  static DistributionSpec burr(double beta, double tau, double lambda) {
    return DistributionSpec(family::Burr{beta, tau, lambda});
  }
  static DistributionSpec frechet(double gamma) { return DistributionSpec(family::Frechet{gamma}); }
  static DistributionSpec lognormal() { return DistributionSpec(family::LogNormal{}); }
  static DistributionSpec weibull(double lambda = 1.0, double tau = 2.0) {
    return DistributionSpec(family::Weibull{lambda, tau});
  }
  static DistributionSpec uniform01() { return DistributionSpec(family::Uniform01{}); }
  static DistributionSpec reversed_burr(double beta, double tau, double lambda, double x_plus = 2.0) {
    return DistributionSpec(family::ReversedBurr{beta, tau, lambda, x_plus});
  }

  const Params& params() const noexcept { return params_; }
  Family family() const noexcept { return static_cast<Family>(params_.index()); }
  /// Short human-readable label, e.g. "burr(1,0.25,1)".
  std::string label() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&);

 private:
  Params params_;
};

std::string_view family_name(Family f);
Family parse_family(std::string_view name);

/// Tail index gamma of the model's maximum domain of attraction.
double true_tail_index(const DistributionSpec& spec);

/// Closed-form c.d.f., used for sampler validation.
double cdf(const DistributionSpec& spec, double x);

/// n i.i.d. draws. Throws DomainError when n == 0.
std::vector<double> sample(const DistributionSpec& spec, std::size_t n, Stream& rng);

/// (1 - epsilon) base + epsilon contaminant, with epsilon in [0, 1).
struct MixtureSpec {
  DistributionSpec base;
  DistributionSpec contaminant;
  double epsilon = 0.0;

  MixtureSpec(DistributionSpec base, DistributionSpec contaminant, double epsilon);
  /// epsilon = 0; the contaminant is never drawn.
  explicit MixtureSpec(DistributionSpec base);

  /// Exact number of contaminant draws in a sample of size n: round(epsilon * n).
  std::size_t contaminated_count(std::size_t n) const noexcept;

  friend bool operator==(const MixtureSpec&, const MixtureSpec&) = default;
};

/// round(epsilon n) contaminant draws and n - round(epsilon n) base draws, shuffled.
/// With epsilon = 0 the result (and the stream position) equals sample(base, n, rng).
std::vector<double> sample_contaminated(const MixtureSpec& mix, std::size_t n, Stream& rng);

}  // namespace tailidx
