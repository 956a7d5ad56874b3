#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <vector>

#include "uc/errors.hpp"

namespace uc {

/// Unnormalized transition weight for the pair (k,l) -> (i,j):
/// 0 unless i+j = k+l, else (1 + min{k,l,i,j}) * q^max(0, min(k,l) - min(i,j)),
/// with 0^0 = 1 handled by an explicit branch.
double weight(double q, std::size_t i, std::size_t j, std::size_t k, std::size_t l);

/// Uniform-outcome kernel 1/(k+l+1) on i+j = k+l, zero otherwise.
double takahata_transition(std::size_t i, std::size_t j, std::size_t k,
                           std::size_t l);

/// Transition probabilities T^(q)_{ij,kl} for penalty parameter q in [0,1].
///
/// Normalization constants C^(q)_{kl} are obtained from the sum of the
/// unnormalized weights over a row, evaluated with running q-powers in
/// O(1) per constant. Rows are generated lazily per total copy number
/// k+l and cached; reads after construction are thread-safe.
class KernelQ {
 public:
  explicit KernelQ(double q);

  double q() const noexcept { return q_; }

  /// C^(q)_{kl} = 1 / sum_i weight(q, i, k+l-i, k, l).
  double c_coefficient(std::size_t k, std::size_t l) const;

  /// T^(q)_{ij,kl} = C^(q)_{kl} * weight(q, i, j, k, l).
  double transition(std::size_t i, std::size_t j, std::size_t k,
                    std::size_t l) const;

  struct RowReport {
    double sum_deviation;   // |sum_{i,j} T - 1|
    double mean_deviation;  // |sum_i i T_{i(k+l-i),kl} - (k+l)/2|
  };

  /// Checks normalization and copy-number conservation of one row.
  RowReport validate_row(std::size_t k, std::size_t l) const;

  /// Cached normalization constants C(u) for all pairs {u, total-u},
  /// indexed by u = min(k,l) = 0..total/2.
  const std::vector<double>& norm_constants(std::size_t total) const;

 private:
  double q_;
  mutable std::mutex mutex_;
  mutable std::map<std::size_t, std::vector<double>> c_rows_;  // key: k+l
};

}  // namespace uc
