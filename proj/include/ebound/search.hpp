#pragma once

// Deterministic 1-D search helpers: grids, golden-section refinement and
// incumbent tracking with explicit tie-breaking (smaller abscissa wins).

#include <cmath>
#include <algorithm>
#include <limits>
#include <vector>

namespace ebound {

/// n points from lo to hi inclusive; the last point is exactly hi.
std::vector<double> linspace(double lo, double hi, int n);

/// n points 10^x for x uniformly spaced in [log_lo, log_hi].
std::vector<double> logspace(double log_lo, double log_hi, int n);

struct Extremum {
  double x = std::numeric_limits<double>::quiet_NaN();
  double f = std::numeric_limits<double>::infinity();
};

/// Replaces the incumbent when f is strictly smaller, or equal with smaller x.
/// NaN objective values never win.
inline void consider_min(Extremum& best, double x, double f) {
  if (std::isnan(f)) return;
  if (std::isnan(best.x) || f < best.f || (f == best.f && x < best.x)) best = {x, f};
}

/// Same as consider_min for maximization (best.f starts at -inf for callers
/// that use Extremum{nan, -inf}).
inline void consider_max(Extremum& best, double x, double f) {
  if (std::isnan(f)) return;
  if (std::isnan(best.x) || f > best.f || (f == best.f && x < best.x)) best = {x, f};
}

inline constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

/// Golden-section minimization on [a, b]; returns the best interior point
/// evaluated. The bracket endpoints are not evaluated.
template <class F>
Extremum golden_min(F&& f, double a, double b, int iters) {
  Extremum best;
  if (iters <= 0 || !(b > a)) return best;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  consider_min(best, c, fc);
  consider_min(best, d, fd);
  for (int it = 1; it < iters; ++it) {
    // NaN compares false: treat it as worse than anything.
    const bool keep_left = std::isnan(fd) || (!std::isnan(fc) && fc <= fd);
    if (keep_left) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider_min(best, c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider_min(best, d, fd);
    }
  }
  return best;
}

template <class F>
Extremum golden_max(F&& f, double a, double b, int iters) {
  Extremum r = golden_min([&](double x) { return -f(x); }, a, b, iters);
  r.f = -r.f;
  return r;
}

/// Grid minimization followed by golden refinement between the neighbours of
/// the grid argmin. Grid points where f is NaN are skipped.
template <class F>
Extremum grid_golden_min(F&& f, const std::vector<double>& grid, int refine_iters) {
  Extremum best;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double fx = f(grid[i]);
    if (std::isnan(fx)) continue;
    if (std::isnan(best.x) || fx < best.f) {
      best = {grid[i], fx};
      best_i = i;
    }
  }
  if (std::isnan(best.x) || grid.size() < 2 || refine_iters <= 0) return best;
  const double a = grid[best_i == 0 ? 0 : best_i - 1];
  const double b = grid[std::min(best_i + 1, grid.size() - 1)];
  const Extremum refined = golden_min(f, a, b, refine_iters);
  if (!std::isnan(refined.x) && refined.f < best.f) best = refined;
  return best;
}

template <class F>
Extremum grid_golden_max(F&& f, const std::vector<double>& grid, int refine_iters) {
  Extremum r = grid_golden_min([&](double x) { return -f(x); }, grid, refine_iters);
  r.f = -r.f;
  return r;
}

}  // namespace ebound
