#include "boltzmann/sim.hpp"

#include <cmath>
#include <numbers>
#include <utility>

namespace boltzmann {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

TrajectoryRecord iterate_trajectory(const Params& params, OrbitState initial, double theta0, std::size_t n_steps,
                                    const SearchOptions& options) {
  TrajectoryRecord record;
  record.params = params;
  record.initial = initial;
  record.steps.reserve(n_steps + 1);
  record.steps.push_back({initial.g, initial.C, theta0, params.gamma / std::sin(theta0)});

  OrbitState state = initial;
  double theta = theta0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    try {
      const MapResult next = billiard_map(params, state, theta, options);
      state = next.next_state;
      theta = next.next_point.theta;
      record.steps.push_back({state.g, state.C, theta, next.next_point.r});
    } catch (const Error& err) {
      record.error = err.code();
      record.terminated_reason = err.code() == ErrorCode::NoFurtherIntersection ? TerminationReason::LeftAllowedRegion
                                                                                : TerminationReason::Error;
      return record;
    }
  }
  return record;
}

TrajectoryRecord iterate_trajectory(const Params& params, OrbitState initial, std::size_t n_steps,
                                    const SearchOptions& options) {
  const std::optional<Arc> arc = locate_arc(params, initial, options);
  if (!arc) throw Error(ErrorCode::NoFurtherIntersection, "initial state has no arc above the wall");
  return iterate_trajectory(params, arc->state, arc->theta_end, n_steps, options);
}

double c_max(const Params& params) {
  if (params.alpha == 0.0) return std::sqrt(std::max(0.0, -params.beta));
  return std::sqrt(std::max(0.0, params.alpha * params.alpha / (-8.0 * params.energy) - params.beta));
}

double AllowedRegion::cell_width() const { return kTwoPi / static_cast<double>(n_g); }

double AllowedRegion::cell_height() const { return (C_max - C_min) / static_cast<double>(n_C); }

OrbitState AllowedRegion::cell_center(std::size_t i_g, std::size_t i_C) const {
  return {g_origin + (static_cast<double>(i_g) + 0.5) * cell_width(),
          C_min + (static_cast<double>(i_C) + 0.5) * cell_height()};
}

std::size_t AllowedRegion::allowed_count() const {
  std::size_t n = 0;
  for (auto m : mask) n += m != 0;
  return n;
}

std::optional<std::size_t> AllowedRegion::cell_of(OrbitState state) const {
  if (!(state.C >= C_min && state.C < C_max)) return std::nullopt;
  const double g = wrap_angle(state.g, g_origin) - g_origin;
  const auto i_g = std::min(n_g - 1, static_cast<std::size_t>(g / cell_width()));
  const auto i_C = std::min(n_C - 1, static_cast<std::size_t>((state.C - C_min) / cell_height()));
  return i_g * n_C + i_C;
}

double wrap_angle(double g, double origin) {
  double x = std::fmod(g - origin, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  if (x >= kTwoPi) x = 0.0;
  return origin + x;
}

AllowedRegion compute_allowed_region(const Params& params, std::size_t n_g, std::size_t n_C, double g_origin,
                                     std::size_t probe, const SearchOptions& options) {
  if (n_g == 0 || n_C == 0) throw Error(ErrorCode::DomainError, "grid dimensions must be positive");
  if (probe == 0) throw Error(ErrorCode::DomainError, "probe sub-grid must be nonempty");
  AllowedRegion region;
  region.n_g = n_g;
  region.n_C = n_C;
  region.C_max = c_max(params);
  region.C_min = -region.C_max;
  region.g_origin = g_origin;
  region.mask.assign(n_g * n_C, 0);
  const double w = region.cell_width();
  const double h = region.cell_height();
  // Probe the center first; most interior cells stop there.
  std::vector<std::pair<double, double>> offsets{{0.5, 0.5}};
  for (std::size_t a = 0; a < probe; ++a) {
    for (std::size_t b = 0; b < probe; ++b) {
      const double u = (static_cast<double>(a) + 0.5) / static_cast<double>(probe);
      const double v = (static_cast<double>(b) + 0.5) / static_cast<double>(probe);
      if (u != 0.5 || v != 0.5) offsets.emplace_back(u, v);
    }
  }
  for (std::size_t i = 0; i < n_g; ++i) {
    for (std::size_t j = 0; j < n_C; ++j) {
      const double g0 = g_origin + static_cast<double>(i) * w;
      const double c0 = region.C_min + static_cast<double>(j) * h;
      for (const auto& [u, v] : offsets) {
        if (locate_arc(params, {g0 + u * w, c0 + v * h}, options)) {
          region.mask[i * n_C + j] = 1;
          break;
        }
      }
    }
  }
  return region;
}

double coverage_fraction(const TrajectoryRecord& record, const AllowedRegion& region) {
  const std::size_t total = region.allowed_count();
  if (total == 0) return 0.0;
  std::vector<std::uint8_t> seen(region.mask.size(), 0);
  std::size_t visited = 0;
  for (const auto& step : record.steps) {
    const auto cell = region.cell_of({step.g, step.C});
    if (!cell || !region.mask[*cell] || seen[*cell]) continue;
    seen[*cell] = 1;
    ++visited;
  }
  return static_cast<double>(visited) / static_cast<double>(total);
}

}  // namespace boltzmann
