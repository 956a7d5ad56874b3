#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "uc/genfunc.hpp"
#include "uc/measure.hpp"
#include "uc/recomb.hpp"

namespace uc {

enum class EvolveMode { discrete, continuous };

struct EvolveConfig {
  EvolveMode mode = EvolveMode::discrete;
  RecombinatorSpec recomb;

  std::size_t steps = 100;  // discrete mode
  double t_end = 10.0;      // continuous mode
  double dt = 0.1;          // continuous mode; must satisfy dt <= 1
  double stop_tol = 1e-10;  // discrete stop on successive TV distance

  std::optional<Distribution> target;
  double moment_r = 2.0;

  /// Monitor the weighted coefficient distance to the geometric point
  /// pinned by the initial mean (meaningful for q = 1 dynamics).
  bool track_coeff_distance = false;
  std::size_t coeff_K = 32;
};

struct TrajectorySample {
  double t;
  Distribution state;
  double mean;
  double M1;
  double Mr;
  std::optional<double> tv_to_target;
  double tail_mass;
  std::optional<double> coeff_distance;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool converged = false;
  std::size_t iterations = 0;
  double final_residual = 0.0;  // last successive step size in TV
  double clipped_total = 0.0;   // negativity clipped by the integrator

  const TrajectorySample& front() const { return samples.front(); }
  const TrajectorySample& back() const { return samples.back(); }
};

/// Generation iteration p(t+1) = R(p(t)); stops after cfg.steps or once the
/// successive TV distance falls below cfg.stop_tol.
Trajectory evolve_discrete(const Distribution& p0, const EvolveConfig& cfg);

/// Vector field R(p) - p on the untruncated support; entries sum to zero.
std::vector<double> rhs(const Recombinator& recomb, const Distribution& p);

/// Classical fixed-step 4th-order integration of dp/dt = R(p) - p.
/// Roundoff-level negative entries are clipped and accounted; entries below
/// -1e-9 abort with PositivityLost.
Trajectory evolve_continuous(const Distribution& p0, const EvolveConfig& cfg);

struct CoeffSample {
  double t;
  CoeffVector coeffs;
  double dist_to_geometric;
};

/// Integrates da/dt = Ra(a) - a for the induced recombinator and monitors
/// the weighted distance to the geometric point (1, alpha, alpha^2, ...).
std::vector<CoeffSample> coeff_evolve_continuous(const CoeffVector& a0,
                                                 double t_end, double dt);

}  // namespace uc
