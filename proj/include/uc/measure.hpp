#pragma once

#include <cstddef>
#include <vector>

#include "uc/errors.hpp"

namespace uc {

/// Input normalization tolerance (text files carry rounded decimals).
inline constexpr double kNormTolInput = 1e-9;
/// Tolerance for internal consistency checks.
inline constexpr double kNormTolInternal = 1e-12;
/// Entries above this negative threshold are treated as roundoff and clipped.
inline constexpr double kNegativeTol = 1e-15;
/// Default truncation bound for copy-number vectors.
inline constexpr std::size_t kDefaultTruncation = 256;
/// Default bound on mass lost to truncation before a state is rejected.
inline constexpr double kDefaultLeakThreshold = 1e-8;

/// Finite truncation of a probability distribution on copy numbers 0..N.
/// Mass discarded by truncation is tracked separately in tail_mass so that
/// stored values plus tail always account for the full unit mass.
class Distribution {
 public:
  /// The point mass at 0.
  Distribution() : values_{1.0}, tail_mass_(0.0) {}

  /// Validates nonnegativity and normalization (|sum - 1| <= 1e-9).
  static Distribution from_values(std::vector<double> values);

  /// Validates nonnegativity and |sum + tail - 1| <= 1e-9.
  static Distribution with_tail(std::vector<double> values, double tail_mass);

  /// No validation; for internal use where the invariant holds by construction.
  static Distribution unchecked(std::vector<double> values, double tail_mass);

  static Distribution point_mass(std::size_t k);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t max_index() const noexcept { return values_.size() - 1; }
  double tail_mass() const noexcept { return tail_mass_; }

  /// p_k, with zero beyond the stored range.
  double at(std::size_t k) const noexcept {
    return k < values_.size() ? values_[k] : 0.0;
  }

  /// Sum of stored values (1 - tail_mass for a valid state).
  double mass() const noexcept;

  /// Smallest index with nonzero value (0 for the zero vector).
  std::size_t support_min() const noexcept;
  /// Largest index with nonzero value.
  std::size_t support_max() const noexcept;

 private:
  Distribution(std::vector<double> values, double tail_mass)
      : values_(std::move(values)), tail_mass_(tail_mass) {}

  std::vector<double> values_;
  double tail_mass_;
};

/// Total variation distance sum_k |p_k - q_k| (shorter vector zero-padded).
double tv_distance(const Distribution& p, const Distribution& q);

/// Mean copy number sum_k k p_k.
double mean(const Distribution& p);

/// Centered moment M_s(p) = sum_k |k - m|^s p_k.
double centered_moment(const Distribution& p, double s, double m);

/// Same with m = mean(p).
double centered_moment(const Distribution& p, double s);

struct MomentReport {
  double mean;
  double M1;
  double Mr;
  double r;
};

/// Mean plus the first and r-th centered moments (default r = 2).
MomentReport moment_report(const Distribution& p, double r = 2.0);

}  // namespace uc
