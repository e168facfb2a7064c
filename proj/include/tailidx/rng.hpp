#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace tailidx {

/**
 * Counter-based random stream.
 *
 * The i-th 64-bit output is a bijective mix of (key + i * golden), with the key
 * derived from the seed through the same mixer. A stream is therefore fully
 * described by (seed, counter): it can be copied, skipped ahead with discard()
 * and split into independent child streams without shared state.
 *
 * All variate generators below are implemented here rather than taken from
 * <random> so that sequences are identical across standard libraries.
 */
class Stream {
 public:
  using result_type = std::uint64_t;

  explicit Stream(std::uint64_t seed) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  void discard(std::uint64_t steps) noexcept { counter_ += steps; }

  /// Child stream `index`; does not advance this stream.
  Stream split(std::uint64_t index) const noexcept;

  /// Uniform on the open interval (0, 1).
  double uniform() noexcept;
  /// Uniform integer in [0, bound).
  std::uint64_t uniform_index(std::uint64_t bound) noexcept;
  double standard_normal() noexcept;
  double standard_exponential() noexcept;
  /// log of a Gamma(shape, 1) variate; stays finite for tiny shapes where the variate underflows.
  double log_gamma_variate(double shape) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Seed of replication `r` in a run with `base_seed`: plain bitwise xor.
constexpr std::uint64_t replication_seed(std::uint64_t base_seed, std::uint64_t r) noexcept {
  return base_seed ^ r;
}

}  // namespace tailidx
