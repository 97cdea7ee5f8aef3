#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "boltzmann/billiard.hpp"
#include "boltzmann/error.hpp"

namespace boltzmann {

/// One reflection: the orbit (g, C) and the wall point where it ends.
struct TrajectoryStep {
  double g = 0.0;
  double C = 0.0;
  double theta_star = 0.0;
  double r_star = 0.0;
};

enum class TerminationReason { MaxSteps, LeftAllowedRegion, Error };

/// steps[0] is the initial orbit; steps[k + 1] = billiard_map(steps[k]).
/// `g` is kept unwrapped so that consecutive entries can be replayed.
struct TrajectoryRecord {
  std::vector<TrajectoryStep> steps;
  Params params;
  OrbitState initial;
  TerminationReason terminated_reason = TerminationReason::MaxSteps;
  std::optional<ErrorCode> error;
};

/// Iterate from an orbit and one of its wall-hit angles.
TrajectoryRecord iterate_trajectory(const Params& params, OrbitState initial, double theta0, std::size_t n_steps,
                                    const SearchOptions& options = {});

/// Iterate from a phase-space point; the arc is found with locate_arc.
/// Throws NoFurtherIntersection if the point is not a billiard state.
TrajectoryRecord iterate_trajectory(const Params& params, OrbitState initial, std::size_t n_steps,
                                    const SearchOptions& options = {});

/// Largest |C| with a real eccentricity (alpha > 0) or a bounded Cotes
/// orbit (alpha == 0).
double c_max(const Params& params);

/// n_g x n_C grid over [origin, origin + 2 pi) x [C_min, C_max]. The mask is
/// row-major with g as the row index: mask[i_g * n_C + i_C].
struct AllowedRegion {
  std::size_t n_g = 0;
  std::size_t n_C = 0;
  double C_min = 0.0;
  double C_max = 0.0;
  double g_origin = 0.0;
  std::vector<std::uint8_t> mask;

  double cell_width() const;
  double cell_height() const;
  double cell_area() const { return cell_width() * cell_height(); }
  OrbitState cell_center(std::size_t i_g, std::size_t i_C) const;
  bool allowed(std::size_t i_g, std::size_t i_C) const { return mask[i_g * n_C + i_C] != 0; }
  std::size_t allowed_count() const;
  /// Flat cell index of a point (g taken modulo 2 pi), nullopt outside the C range.
  std::optional<std::size_t> cell_of(OrbitState state) const;
};

/// Wrap g into [origin, origin + 2 pi).
double wrap_angle(double g, double origin = 0.0);

/// A cell is allowed when the orbit of its center or of some point of a
/// probe x probe midpoint sub-grid has an arc above the wall, i.e. when the
/// cell meets the billiard domain.
AllowedRegion compute_allowed_region(const Params& params, std::size_t n_g, std::size_t n_C, double g_origin = 0.0,
                                     std::size_t probe = 5, const SearchOptions& options = {});

/// Fraction of allowed cells visited by the trajectory.
double coverage_fraction(const TrajectoryRecord& record, const AllowedRegion& region);

}  // namespace boltzmann
