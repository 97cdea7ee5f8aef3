#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "boltzmann/koopman.hpp"
#include "boltzmann/measure.hpp"
#include "boltzmann/sim.hpp"

namespace boltzmann {

/// `step,g,C,theta_star,r_star`, one row per reflection (the initial orbit
/// is not a reflection and is omitted). g is wrapped into the window
/// [g_origin, g_origin + 2 pi). 17 significant digits.
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, double g_origin = 0.0);

/// {n_g, n_C, C_min, C_max, g_origin, mask}, mask row-major with g as row.
void write_region_json(std::ostream& out, const AllowedRegion& region);

/// `index,re_lambda,im_lambda,abs_lambda_minus_one` for every eigenvalue.
void write_spectrum_csv(std::ostream& out, const KoopmanSystem& system);

/// {n_g, n_C, index, lambda: [re, im], values}, values row-major over the
/// full grid with null on masked cells.
void write_eigenfunction_json(std::ostream& out, const KoopmanSystem& system, std::size_t index);

/// `g,C,theta_star,det,abs_det_minus_one`.
void write_measure_csv(std::ostream& out, const std::vector<JacobianReport>& reports);

}  // namespace boltzmann
