#pragma once

// Reference computations for the tests. Nothing here calls the library's
// search code: the objectives are rewritten from their definitions and the
// optimizations are plain exhaustive grids, zoomed around the incumbent.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ebound/core.hpp"

namespace oracle {

using ld = long double;

// ---- lower bound -----------------------------------------------------------

// Objective with the first square root precomputed by the caller.
inline ld lb_objective(ld s2, ld power, ld first, ld su, ld gamma) {
  ld q = (1 - gamma) * (1 - gamma) * s2 + gamma * gamma * power - 2 * gamma * (1 - gamma) * su;
  q = std::max<ld>(q, 0);
  const ld gap = std::max<ld>(first - std::sqrt(q), 0);
  return gap * gap / (gamma * gamma);
}

inline ld lb_first_root(ld sigma, ld power, ld rate, ld su) {
  const ld s2 = sigma * sigma;
  return std::sqrt(s2 * std::pow(2.0L, 2 * rate) / (1 + s2 + power + 2 * su));
}

struct GammaScan {
  int points = 100'000;
  ld log_lo = -8;
  ld log_hi = 8;
  int zooms = 2;
  int zoom_points = 1'000;
};

// Log-spaced exponents and values of the coarse gamma grid, shared by every sigma_SU.
struct GammaGrid {
  explicit GammaGrid(const GammaScan& g) : scan(g), step((g.log_hi - g.log_lo) / (g.points - 1)) {
    gammas.resize(static_cast<std::size_t>(g.points));
    for (int i = 0; i < g.points; ++i) gammas[static_cast<std::size_t>(i)] = std::pow(10.0L, g.log_lo + step * i);
  }
  GammaScan scan;
  ld step;
  std::vector<ld> gammas;
};

// sup over the gamma grid, then finer grids between the neighbours of the best point.
inline ld lb_sup_gamma(ld sigma, ld power, ld rate, ld su, const GammaGrid& grid) {
  const ld s2 = sigma * sigma;
  const ld first = lb_first_root(sigma, power, rate, su);
  ld best = 0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < grid.gammas.size(); ++i) {
    const ld v = lb_objective(s2, power, first, su, grid.gammas[i]);
    if (v > best) best = v, arg = i;
  }
  if (best == 0) return 0;
  const GammaScan& g = grid.scan;
  ld step = grid.step;
  ld centre = g.log_lo + step * static_cast<ld>(arg);
  for (int level = 0; level < g.zooms; ++level) {
    const ld lo = std::max(g.log_lo, centre - step), hi = std::min(g.log_hi, centre + step);
    step = (hi - lo) / (g.zoom_points - 1);
    for (int i = 0; i < g.zoom_points; ++i) {
      const ld x = lo + step * i;
      const ld v = lb_objective(s2, power, first, su, std::pow(10.0L, x));
      if (v > best) best = v, centre = x;
    }
  }
  return best;
}

struct LowerScan {
  int su_points = 2001;
  int zooms = 6;
  int zoom_points = 201;
  GammaScan gamma;
};

struct LowerOracle {
  ld value;
  ld sigma_su;
};

// inf over sigma_SU of the gamma sup: full grid, then zoom levels shrinking
// the bracket tenfold each time.
inline LowerOracle lower_bound(ld sigma, ld power, ld rate, const LowerScan& s = {}) {
  const ld s2 = sigma * sigma;
  ld lo = std::max(-sigma * std::sqrt(power), (std::pow(2.0L, 2 * rate) - 1 - power - s2) / 2);
  ld hi = sigma * std::sqrt(power);
  if (rate == 0) lo = -sigma * std::sqrt(power);
  const ld range_lo = lo, range_hi = hi;
  LowerOracle best{std::numeric_limits<ld>::infinity(), lo};
  const GammaGrid grid(s.gamma);
  int n = s.su_points;
  for (int level = 0; level <= s.zooms; ++level) {
    const ld step = n > 1 ? (hi - lo) / (n - 1) : 0;
    for (int i = 0; i < n; ++i) {
      const ld su = lo + step * i;
      const ld v = lb_sup_gamma(sigma, power, rate, su, grid);
      if (v < best.value) best = {v, su};
    }
    if (step == 0) break;
    lo = std::max(range_lo, best.sigma_su - step);
    hi = std::min(range_hi, best.sigma_su + step);
    n = s.zoom_points;
  }
  return best;
}

// ---- strategy family -------------------------------------------------------

// Second moments of (X, Y, V) with X = (1-beta) S + U, Y = X + Z,
// V = U + alpha (1-beta) S, U ~ N(0, P - beta^2 sigma^2) independent of S, Z.
struct Moments {
  ld s, p;  // attenuated host variance, DPC power
  ld xx() const { return s + p; }
  ld yy() const { return s + p + 1; }
  ld xy() const { return s + p; }
  ld vv(ld a) const { return p + a * a * s; }
  ld xv(ld a) const { return p + a * s; }
  ld yv(ld a) const { return p + a * s; }
};

inline Moments moments(ld sigma, ld power, ld beta) {
  const ld s = sigma * sigma * (1 - beta) * (1 - beta);
  return {s, std::max<ld>(power - beta * beta * sigma * sigma, 0)};
}

// E[X | Y, V] error by solving the 2x2 normal equations.
inline ld lmmse_conditioning(ld sigma, ld power, ld alpha, ld beta) {
  const Moments m = moments(sigma, power, beta);
  const ld a = m.yy(), b = m.yv(alpha), d = m.vv(alpha);
  const ld det = a * d - b * b;
  const ld c1 = m.xy(), c2 = m.xv(alpha);
  const ld explained = (d * c1 * c1 - 2 * b * c1 * c2 + a * c2 * c2) / det;
  return m.xx() - explained;
}

// The expanded closed form: (s+p) - [(s+p)^2 (a^2 s + p) + (a s + p)^2 (1 - s - p)] / det.
inline ld lmmse_expanded(ld sigma, ld power, ld alpha, ld beta) {
  const Moments m = moments(sigma, power, beta);
  const ld s = m.s, p = m.p, a = alpha;
  const ld det = p * s * (1 - a) * (1 - a) + p + a * a * s;
  return (s + p) - ((s + p) * (s + p) * (a * a * s + p) + (a * s + p) * (a * s + p) * (1 - s - p)) / det;
}

// I(V; Y) - I(V; S~) from the covariances.
inline ld dpc_rate(ld sigma, ld power, ld alpha, ld beta) {
  const Moments m = moments(sigma, power, beta);
  const ld vy = 0.5L * std::log2(m.vv(alpha) * m.yy() / (m.vv(alpha) * m.yy() - m.yv(alpha) * m.yv(alpha)));
  const ld vs = m.s > 0 ? 0.5L * std::log2(m.vv(alpha) / m.p) : 0;
  return vy - vs;
}

struct UpperScan {
  int alpha_points = 2001;
  int beta_points = 2001;
  ld alpha_lo = -1, alpha_hi = 2;
  int zooms = 40;         // per axis; each zoom box spans +-span previous steps
  int zoom_points = 101;
  int zoom_span = 25;     // so the step halves per level
  // Absolute, near rounding level: the feasible set can be a single point,
  // and a looser slack admits infeasible beta of order sqrt(slack).
  ld rate_slack = 1e-16;
};

struct UpperOracle {
  ld value;
  ld alpha, beta;
};

struct Scan1 {
  ld x, f;
};

// Exhaustive 1-D minimization: uniform grid, then shrinking grids around the
// incumbent. f returns +inf where infeasible.
template <class F>
Scan1 scan_min(F&& f, ld lo, ld hi, int points, const UpperScan& u) {
  const ld range_lo = lo, range_hi = hi;
  Scan1 best{lo, std::numeric_limits<ld>::infinity()};
  int n = points;
  for (int level = 0; level <= u.zooms; ++level) {
    const ld step = n > 1 ? (hi - lo) / (n - 1) : 0;
    for (int i = 0; i < n; ++i) {
      const ld x = lo + step * i;
      const ld v = f(x);
      if (v < best.f) best = {x, v};
    }
    if (step == 0 || !std::isfinite(static_cast<double>(best.f))) break;
    lo = std::max(range_lo, best.x - u.zoom_span * step);
    hi = std::min(range_hi, best.x + u.zoom_span * step);
    n = u.zoom_points;
  }
  return best;
}

// Nested exhaustive search over (alpha, beta): the base level is the full
// alpha x beta grid. Nesting matters: optima sit on the curved rate boundary,
// where the objective is far steeper across the boundary than along it, and a
// joint 2-D zoom then stalls at whichever grid point lies closest to it.
inline UpperOracle upper_bound(ld sigma, ld power, ld rate, const UpperScan& u = {}) {
  const ld beta_max = std::min<ld>(1, std::sqrt(power) / sigma);
  const auto along_alpha = [&](ld b) {
    return scan_min(
        [&](ld a) {
          if (moments(sigma, power, b).p <= 0) return std::numeric_limits<ld>::infinity();
          if (dpc_rate(sigma, power, a, b) < rate - u.rate_slack) return std::numeric_limits<ld>::infinity();
          return lmmse_conditioning(sigma, power, a, b);
        },
        u.alpha_lo, u.alpha_hi, u.alpha_points, u);
  };
  const Scan1 beta = scan_min([&](ld b) { return along_alpha(b).f; }, 0, beta_max, u.beta_points, u);
  UpperOracle best{beta.f, std::isfinite(static_cast<double>(beta.f)) ? along_alpha(beta.x).x : 0, beta.x};
  if (rate == 0) {
    // No DPC at all: estimate X = (1-beta) S from Y alone.
    const ld s = sigma * sigma * (1 - beta_max) * (1 - beta_max);
    const ld linear = s / (s + 1);
    if (linear < best.value) best = {linear, 0, beta_max};
  }
  return best;
}

// ---- rates -----------------------------------------------------------------

// sup over sigma_SU in [-sigma sqrt(P), 0] of the perfect-recovery rate, dense grid.
inline ld capacity(ld sigma, ld power, int points = 1'000'000) {
  const ld s2 = sigma * sigma;
  ld best = -std::numeric_limits<ld>::infinity();
  const ld lo = -sigma * std::sqrt(power);
  for (int i = 0; i < points; ++i) {
    const ld su = lo - lo * i / (points - 1);
    const ld tot = power + s2 + 2 * su;
    if (tot < 1e-12L) continue;
    const ld r = 0.5L * std::log2((power - su * su / s2) * (tot + 1) / tot);
    best = std::max(best, r);
  }
  return best;
}

// Relative comparison; a reference within abs_zero of 0 is an exact zero
// and then the value must be one too.
inline bool rel_close(double got, double want, double rel, double abs_zero = 1e-15) {
  if (std::abs(want) <= abs_zero) return std::abs(got) <= abs_zero;
  return std::abs(got - want) <= rel * std::abs(want);
}

}  // namespace oracle
