#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uc/measure.hpp"

namespace uc {

/// Default weight ratio parameter of the coefficient metric; must stay
/// strictly below 1/3 for the induced recombinator to contract.
inline constexpr double kDefaultGamma = 0.25;
/// Default coefficient truncation.
inline constexpr std::size_t kDefaultCoeffK = 64;

/// Size-biased expansion coefficients a_0..a_K around z = 1, together with
/// the bound parameter delta and metric parameter gamma. a_0 = 1 and
/// a_1 = alpha identify the unit mass and half the mean.
struct CoeffVector {
  std::vector<double> values;
  double gamma = kDefaultGamma;
  double delta = 1.0;

  double alpha() const noexcept { return values.size() > 1 ? values[1] : 0.0; }
  std::size_t size() const noexcept { return values.size(); }
  double at(std::size_t k) const noexcept {
    return k < values.size() ? values[k] : 0.0;
  }
};

/// max(1, max_{k>=2} a_k^(1/k)) from the data.
double estimate_delta(std::span<const double> values);

/// a_k = (1/(k+1)) sum_{l>=k} binom(l,k) p_l for k <= K, evaluated for the
/// mass-normalized restriction so that a_0 = 1 exactly. Binomials are
/// updated by incremental ratios to stay inside floating-point range.
/// delta = 0 requests the data-driven estimate.
CoeffVector coeffs_from_distribution(const Distribution& p, std::size_t K,
                                     double gamma = kDefaultGamma,
                                     double delta = 0.0);

/// Inverse map p_k = sum_{l>=k} (-1)^(l-k) binom(l,k) (l+1) a_l, truncated
/// at N. The alternating series is guarded by a tail-decrease check and is
/// meaningful only for coefficients with fast geometric decay.
Distribution distribution_from_coeffs(const CoeffVector& a, std::size_t N);

/// Coefficient image of random unequal crossover:
/// out_k = (1/(k+1)) sum_{n<=k} a_n a_{k-n}.
CoeffVector induced_recombinator(const CoeffVector& a);

/// d(a,b) = sum_k (gamma/delta)^k |a_k - b_k| over the stored range.
double weighted_metric(const CoeffVector& a, const CoeffVector& b);

/// Membership in the coefficient space: a_0 = 1 and 0 <= a_k <= delta^k
/// for all stored k >= 2.
bool membership(const CoeffVector& a);

/// Solves the fixed-point recursion a_k = (1/(k-1)) sum_{n=1}^{k-1} a_n a_{k-n}
/// with a_0 = 1, a_1 = alpha; the result is the geometric vector alpha^k.
CoeffVector fixed_coeffs_recursion(double alpha, std::size_t K,
                                   double gamma = kDefaultGamma,
                                   double delta = 0.0);

/// The geometric vector (1, alpha, alpha^2, ...).
CoeffVector geometric_coeffs(double alpha, std::size_t K,
                             double gamma = kDefaultGamma, double delta = 0.0);

}  // namespace uc
