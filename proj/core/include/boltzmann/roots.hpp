#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace boltzmann {

/// Bisection of a sign change of f on [lo, hi] down to adjacent doubles.
/// f(lo) and f(hi) must have opposite signs (zero counts as its own sign
/// only when exact).
template <class F>
double bisect_root(F&& f, double lo, double hi) {
  double f_lo = f(lo);
  if (f_lo == 0.0) return lo;
  const double f_hi = f(hi);
  if (f_hi == 0.0) return hi;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::min(lo, hi) || mid >= std::max(lo, hi)) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// All sign changes of f on a uniform grid of `samples` intervals over
/// [a, b], each refined by bisection. Roots ascend. Double roots that do not
/// change sign are invisible at grid resolution.
template <class F>
std::vector<double> sampled_roots(F&& f, double a, double b, std::size_t samples) {
  std::vector<double> roots;
  const double step = (b - a) / static_cast<double>(samples);
  double x_prev = a;
  double f_prev = f(a);
  for (std::size_t i = 1; i <= samples; ++i) {
    const double x = i == samples ? b : a + step * static_cast<double>(i);
    const double fx = f(x);
    if ((f_prev < 0.0) != (fx < 0.0)) roots.push_back(bisect_root(f, x_prev, x));
    x_prev = x;
    f_prev = fx;
  }
  return roots;
}

}  // namespace boltzmann
