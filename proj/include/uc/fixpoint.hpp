#pragma once

#include <cstddef>
#include <optional>

#include "uc/kernel.hpp"
#include "uc/measure.hpp"

namespace uc {

struct FixedPointResult {
  enum class Provenance { analytic, iterative };

  Distribution distribution;
  std::optional<double> q;  // empty for the Takahata variant
  double mean_target = 0.0;
  double residual = 0.0;  // ||R(p) - p||_1 on the untruncated image
  Provenance provenance = Provenance::analytic;
  std::size_t iterations = 0;
};

/// Iteration ran out of budget; carries the best iterate found.
class NotConverged : public NumericError {
 public:
  NotConverged(const std::string& msg, FixedPointResult best)
      : NumericError(msg), best_(std::move(best)) {}
  const FixedPointResult& best() const noexcept { return best_; }

 private:
  FixedPointResult best_;
};

/// q = 0 fixed point with mean m: mass floor(m)+1-m at floor(m) and the
/// remainder at ceil(m).
FixedPointResult analytic_internal(double m, std::size_t N = kDefaultTruncation);

/// q = 1 fixed point p_k = (2/(m+2))^2 (k+1) (m/(m+2))^k, truncated at N.
FixedPointResult analytic_random(double m, std::size_t N = kDefaultTruncation);

/// Takahata fixed point: the geometric distribution with mean m.
FixedPointResult analytic_takahata(double m, std::size_t N = kDefaultTruncation);

/// Fixed-point iteration of the general recombinator from the q = 1
/// analytic point of the same mean, until the successive TV distance
/// drops below tol. Throws NotConverged after max_iter steps.
FixedPointResult solve_numeric(double q, double m,
                               std::size_t N = kDefaultTruncation,
                               double tol = 1e-11, std::size_t max_iter = 10000);

/// Largest detailed-balance violation
/// max |T_{ij,kl} p_k p_l - T_{kl,ij} p_i p_j| over i+j = k+l <= window.
double reversibility_residual(const Distribution& p, const KernelQ& kernel,
                              std::size_t window = 12);

/// Checks that every coefficient of R_q(p) is bounded by the matching
/// coefficient of R_q'(p) (q <= q'), up to 1e-10 slack, for j <= K.
bool monotonicity_check(const Distribution& p, double q, double qprime,
                        std::size_t K);

}  // namespace uc
