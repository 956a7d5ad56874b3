#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace uc {

struct CheckResult {
  std::string name;
  bool pass;
  double measured;
  double tolerance;
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Negative control: evaluate kernel rows from unnormalized weights so
  /// the normalization checks must fail.
  bool fault_skip_kernel_normalization = false;
};

/// Runs every module-level consistency check with seeded inputs and
/// returns one entry per check, sorted by name. Failures are report
/// entries, not errors.
std::vector<CheckResult> verify_suite(const VerifyOptions& options = {});

/// Closed-form expression for the kernel normalization constant; retained
/// as an oracle for q away from 1, where it is well conditioned.
double c_closed_form(double q, std::size_t k, std::size_t l);

}  // namespace uc
