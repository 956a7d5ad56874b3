#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uc/kernel.hpp"
#include "uc/measure.hpp"

namespace uc {

/// Selects a recombination variant and its truncation policy.
struct RecombinatorSpec {
  enum class Variant { general, internal, random, takahata };

  Variant variant = Variant::general;
  double q = 1.0;  // used by Variant::general only
  std::size_t truncation = kDefaultTruncation;
  double leak_threshold = kDefaultLeakThreshold;

  static RecombinatorSpec general_q(double q,
                                    std::size_t truncation = kDefaultTruncation,
                                    double leak = kDefaultLeakThreshold) {
    return RecombinatorSpec{Variant::general, q, truncation, leak};
  }
  static RecombinatorSpec internal_uc(std::size_t truncation = kDefaultTruncation,
                                      double leak = kDefaultLeakThreshold) {
    return RecombinatorSpec{Variant::internal, 0.0, truncation, leak};
  }
  static RecombinatorSpec random_uc(std::size_t truncation = kDefaultTruncation,
                                    double leak = kDefaultLeakThreshold) {
    return RecombinatorSpec{Variant::random, 1.0, truncation, leak};
  }
  static RecombinatorSpec takahata(std::size_t truncation = kDefaultTruncation,
                                   double leak = kDefaultLeakThreshold) {
    return RecombinatorSpec{Variant::takahata, 1.0, truncation, leak};
  }
};

/// Raw quadratic map on a plain value vector. `leak` is the mass that fell
/// beyond the output capacity; values are truncated to out_cap entries.
struct RawApply {
  std::vector<double> values;
  double leak = 0.0;
};

/// One recombination step with the full parameterized kernel, computed in
/// O(S^2) for support size S by grouping pairs by total copy number and
/// folding the kernel row into prefix/suffix recurrences.
RawApply apply_general_raw(const KernelQ& kernel, std::span<const double> p,
                           std::size_t out_cap);

/// q = 0 closed form: outcomes uniform on the band between the pair.
/// Support never leaves [support_min, support_max]; leak is always 0.
RawApply apply_internal_raw(std::span<const double> p, std::size_t out_cap);

/// Uniform fragmentation pi_k = sum_{l>=k} p_l/(l+1).
std::vector<double> fragment_raw(std::span<const double> p);

/// q = 1 closed form: fragmentation followed by convolution pi * pi.
RawApply apply_random_raw(std::span<const double> p, std::size_t out_cap);

/// Takahata variant: uniform outcomes over 0..k+l for each pair.
RawApply apply_takahata_raw(std::span<const double> p, std::size_t out_cap);

/// Distribution-level wrappers. Truncation overflow is added to the output
/// tail mass; LeakExceeded is thrown when the accumulated tail passes
/// leak_threshold.
Distribution apply_general(const KernelQ& kernel, const Distribution& p,
                           std::size_t truncation = kDefaultTruncation,
                           double leak_threshold = kDefaultLeakThreshold);
Distribution apply_internal(const Distribution& p);
Distribution fragment_measure(const Distribution& p);
Distribution apply_random(const Distribution& p,
                          std::size_t truncation = kDefaultTruncation,
                          double leak_threshold = kDefaultLeakThreshold);
Distribution apply_takahata(const Distribution& p,
                            std::size_t truncation = kDefaultTruncation,
                            double leak_threshold = kDefaultLeakThreshold);

/// Bound recombinator: owns the kernel for intermediate q and routes
/// q = 0 and q = 1 through their closed-form fast paths.
class Recombinator {
 public:
  explicit Recombinator(RecombinatorSpec spec);

  Distribution operator()(const Distribution& p) const;

  /// Raw step for integrator internals (no leak threshold check).
  RawApply step_raw(std::span<const double> p, std::size_t out_cap) const;

  const RecombinatorSpec& spec() const noexcept { return spec_; }

 private:
  RecombinatorSpec spec_;
  std::optional<KernelQ> kernel_;  // only for general q in (0,1)
};

}  // namespace uc
