#pragma once

#include <iosfwd>
#include <string>

#include "uc/dynamics.hpp"
#include "uc/genfunc.hpp"
#include "uc/measure.hpp"

namespace uc {

/// Reads the `k,p` distribution format: header row, rows in increasing k,
/// missing k treated as zero. Validation follows Distribution::from_values.
Distribution read_distribution_csv(std::istream& in);
Distribution read_distribution_csv(const std::string& path);

/// Writes `k,p` rows for every stored entry with round-trippable precision.
void write_distribution_csv(std::ostream& out, const Distribution& p);
void write_distribution_csv(const std::string& path, const Distribution& p);

/// Writes `k,a` coefficient rows.
void write_coeffs_csv(std::ostream& out, const CoeffVector& a);
void write_coeffs_csv(const std::string& path, const CoeffVector& a);

/// Trajectory monitor table: t, mean, M1, Mr, tv_to_target, tail_mass.
/// tv_to_target is left empty when no target was supplied.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

}  // namespace uc
