#pragma once

// Achievable side: the linear + dirty-paper-coding strategy family.
//
// The encoder spends P_lin = beta^2 sigma^2 on scaling the host down to
// (1 - beta) S (variance s = sigma^2 (1 - beta)^2) and P_dpc = P - P_lin on a
// DPC codeword U_dpc with parameter alpha. The decoder recovers
// V = alpha (1 - beta) S + U_dpc and estimates X = (1 - beta) S + U_dpc
// linearly from (Y, V), Y = X + Z.

#include <array>
#include <cstdint>

#include "ebound/core.hpp"
#include "ebound/parallel.hpp"

namespace ebound {

struct StrategyParams {
  double alpha = 1.0;
  double beta = 0.0;
};

/// Largest admissible beta: min(1, sqrt(P) / sigma).
double max_beta(double sigma, double power);

/// Host variance after linear scaling and the power left for the DPC part.
struct PowerSplit {
  double host_var = 0.0;   ///< sigma^2 (1 - beta)^2
  double dpc_power = 0.0;  ///< P - beta^2 sigma^2
};

/// Throws DomainError unless sigma > 0, power >= 0, alpha finite and
/// 0 <= beta <= max_beta(sigma, power).
PowerSplit split_power(double sigma, double power, const StrategyParams& sp);

/// 0.5 log2(p (p + s + 1) / (p s (1 - alpha)^2 + p + alpha^2 s)).
/// Throws DegenerateError when P_dpc <= 0.
double dpc_rate(double sigma, double power, const StrategyParams& sp);

/// Determinant of the (Y, V) covariance, p s (1 - alpha)^2 + p + alpha^2 s.
double observation_det(double sigma, double power, const StrategyParams& sp);

/// Coefficients (w_Y, w_V) of the linear MMSE estimate of X from (Y, V).
std::array<double, 2> lmmse_weights(double sigma, double power, const StrategyParams& sp);

/// Linear MMSE of X from (Y, V). Equals the MMSE of Z from (Y, V), which gives
/// the cancellation-free form p s (1 - alpha)^2 / det.
/// Throws DegenerateError when P_dpc <= 0 or the covariance is singular.
double lmmse_x(double sigma, double power, const StrategyParams& sp);

/// Distortion of the uncoded strategy s / (s + 1), which estimates X from Y alone.
double linear_only_mmse(double sigma, double power, double beta);

enum class StrategyMethod { kProfile, kGrid };

struct StrategySearchConfig {
  double alpha_lo = -1.0;
  double alpha_hi = 2.0;
  int alpha_points = 401;
  int beta_points = 401;
  int refine_iters = 60;
  StrategyMethod method = StrategyMethod::kProfile;
};

void validate(const StrategySearchConfig& cfg);

/// Feasible alpha interval {alpha : dpc_rate >= R} at one beta, intersected
/// with the configured alpha window. Empty when P_dpc <= 0 or no alpha meets the rate.
std::optional<Interval> rate_feasible_alphas(double sigma, double power, double rate, double beta,
                                             const StrategySearchConfig& cfg = {});

/// min over (alpha, beta) of lmmse_x subject to dpc_rate >= R; at R = 0 the
/// uncoded strategy with beta = max_beta is also a candidate.
///
/// kProfile solves the alpha problem exactly for each beta: the rate
/// constraint is a quadratic inequality in alpha, and the distortion is
/// monotone on either side of alpha = 1, so the optimum is alpha = 1 or the
/// feasible endpoint nearest to it. beta is searched by grid + golden section.
/// kGrid is the 2-D (alpha, beta) grid with coordinate refinement.
/// Throws FeasibilityError when P < 2^{2R} - 1 or no strategy meets the rate.
BoundResult upper_bound_mmse(const ProblemParams& params, const StrategySearchConfig& cfg = {});

struct RateSearchConfig {
  int grid_points = 2001;
  int refine_iters = 60;
};

struct RateResult {
  double rate = 0.0;
  double sigma_su_star = 0.0;
};

/// Largest rate with perfect recovery of X:
/// sup over sigma_SU in [-sigma sqrt(P), 0] of
/// 0.5 log2((P sigma^2 - sigma_SU^2)(1 + sigma^2 + P + 2 sigma_SU) /
///          (sigma^2 (sigma^2 + P + 2 sigma_SU))).
/// May be negative for small P: then even R = 0 has no perfect recovery.
RateResult capacity(double sigma, double power, const RateSearchConfig& cfg = {});

/// The alpha = 1 strategy rate written over sigma_SU = -sigma sqrt(P_lin):
/// sup of 0.5 log2((P - sigma_SU^2/sigma^2)(P + sigma^2 + 2 sigma_SU + 1) /
///                 (P + sigma^2 + 2 sigma_SU)).
RateResult achievable_rate_alpha1(double sigma, double power, const RateSearchConfig& cfg = {});

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

struct McEstimate {
  double mmse = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of the distortion of the lmmse_weights estimator.
/// Samples are drawn in fixed-size chunks, each with its own generator seeded
/// from (seed, chunk index), so serial and parallel runs agree bit for bit.
/// With P_dpc = 0 the estimate uses Y alone (uncoded strategy).
McEstimate mc_lmmse_check(double sigma, double power, const StrategyParams& sp, const McConfig& mc,
                          Exec exec = Exec::kParallel);

}  // namespace ebound
