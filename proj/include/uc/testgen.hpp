#pragma once

#include <cstdint>
#include <cstddef>

#include "uc/genfunc.hpp"
#include "uc/measure.hpp"

namespace uc::testgen {

/// Small deterministic generator for reproducible checks; the uniform
/// mapping is fixed here so reports do not depend on library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t next() noexcept {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform() noexcept {  // [0, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

  std::size_t index(std::size_t n) noexcept { return next() % n; }

 private:
  std::uint64_t state_;
};

/// Normalized positive vector with a geometric-decay envelope decay^k, so
/// generating-function preconditions hold by construction.
Distribution random_distribution(Rng& rng, std::size_t max_support,
                                 double decay = 0.6);

/// Random distribution adjusted to an exact target mean by mixing with a
/// point mass at 0 or at max_support.
Distribution random_with_mean(Rng& rng, std::size_t max_support,
                              double target_mean);

/// Random element of the coefficient space: a_0 = 1, a_1 = alpha,
/// 0 <= a_k <= delta^k.
CoeffVector random_coeffs(Rng& rng, double alpha, double delta, std::size_t K,
                          double gamma = kDefaultGamma);

}  // namespace uc::testgen
