#pragma once

// Sweeps over the bounds: weighted control cost k^2 P + MMSE at zero rate,
// ratio surfaces, power-for-distortion inversions and distortion-vs-rate curves.

#include <vector>

#include "ebound/achievability.hpp"
#include "ebound/core.hpp"
#include "ebound/lower_bounds.hpp"
#include "ebound/parallel.hpp"
#include "ebound/sweep_table.hpp"

namespace ebound {

enum class LowerBoundKind { kNew, kLegacy };
enum class BoundKind { kLowerNew, kLowerLegacy, kUpper };

BoundKind as_bound_kind(LowerBoundKind kind);
const char* to_string(LowerBoundKind kind);
const char* to_string(BoundKind kind);

struct SearchConfigs {
  SigmaSuSearchConfig sigma_su;
  GammaSearchConfig gamma;
  StrategySearchConfig strategy;
};

/// One bound at one point. The legacy bound exists only at R = 0.
BoundResult evaluate_bound(BoundKind kind, const ProblemParams& params, const SearchConfigs& search = {});

struct PowerSweepConfig {
  int points = 400;       ///< log-spaced powers in [power_min, max(100 sigma^2, 100 / k^2)]
  double power_min = 1e-6;
  int refine_iters = 40;  ///< golden-section steps between the neighbours of the grid argmin
};

/// P = 0 followed by the log-spaced sweep for weight k at host deviation sigma.
std::vector<double> weighted_cost_powers(double k, double sigma, const PowerSweepConfig& cfg = {});

struct CostMinimum {
  double j = 0.0;
  double p_star = 0.0;
  BoundResult bound;  ///< bound evaluated at p_star
};

/// min over P of k^2 P + bound(sigma, P, 0).
CostMinimum minimize_weighted_cost(double k, double sigma, BoundKind kind, const PowerSweepConfig& cfg = {},
                                   const SearchConfigs& search = {});

struct WeightedCostResult {
  double k = 0.0;
  double j_lower = 0.0;
  double j_upper = 0.0;
  double p_star_lower = 0.0;
  double p_star_upper = 0.0;
  BoundResult lower_at_star;
  BoundResult upper_at_star;
};

/// Lower- and upper-bound costs minimized on the identical power grid.
WeightedCostResult weighted_cost(double k, double sigma, LowerBoundKind kind, const PowerSweepConfig& cfg = {},
                                 const SearchConfigs& search = {});

/// j_upper / j_lower over a (k, sigma) grid; axis1 = k, axis2 = sigma.
/// lower/upper hold the minimized costs, the optimizer columns the bound
/// optimizers at the respective minimizing powers.
SweepTable cost_ratio_surface(const std::vector<double>& ks, const std::vector<double>& sigmas,
                              LowerBoundKind kind, const PowerSweepConfig& cfg = {},
                              const SearchConfigs& search = {}, Exec exec = Exec::kParallel);

/// upper_bound_mmse / lower bound over a (P, sigma) grid at one rate;
/// axis1 = power, axis2 = sigma. Throws FeasibilityError if any P < 2^{2R} - 1.
SweepTable mmse_ratio_surface(const std::vector<double>& powers, const std::vector<double>& sigmas,
                              double rate, LowerBoundKind kind, const SearchConfigs& search = {},
                              Exec exec = Exec::kParallel);

struct PowerInversionConfig {
  int grid_points = 400;
  double offset_min = 1e-8;     ///< smallest log-grid offset above the minimum feasible power
  double bisect_rel_tol = 1e-9;  ///< stop when the bracket is below tol * (1 + P)
  double power_ceiling = 1e12;
};

/// Least power whose bound reaches distortion <= target, computed on the
/// running-minimum envelope of the bound-vs-power curve. For the lower-bound
/// kinds this lower-bounds the power any scheme needs; for kUpper it is power
/// sufficient for the linear+DPC family.
///
/// At R = 0 a target >= sigma^2/(sigma^2+1) returns 0. For R > 0 the search
/// starts at 2^{2R} - 1, the least power at which the rate is feasible.
double power_for_mmse(double sigma, double target, double rate, BoundKind kind,
                      const PowerInversionConfig& cfg = {}, const SearchConfigs& search = {});

/// Upper/lower power ratio over (target fraction, sigma), where the target
/// distortion is fraction * sigma^2/(sigma^2+1); axis1 = mmse_fraction, axis2 = sigma.
/// lower/upper hold the two power values.
SweepTable power_ratio_surface(const std::vector<double>& fractions, const std::vector<double>& sigmas,
                               double rate, LowerBoundKind kind, const PowerInversionConfig& cfg = {},
                               const SearchConfigs& search = {}, Exec exec = Exec::kParallel);

/// Lower and upper MMSE versus rate at fixed (sigma, P); axis1 = rate, axis2 = sigma.
/// Throws FeasibilityError for any rate above 0.5 log2(1 + P).
SweepTable mmse_vs_rate(double sigma, double power, const std::vector<double>& rates,
                        const SearchConfigs& search = {}, Exec exec = Exec::kParallel);

}  // namespace ebound
