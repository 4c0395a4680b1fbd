#pragma once

// Converse bounds on the distortion MMSE(P, R) of the modified host X = S + U.
//
// The bound is inf over the host/input correlation sigma_SU of sup over
// gamma > 0 of
//
//   (1/gamma^2) ((sqrt(sigma^2 2^{2R} / (1 + sigma^2 + P + 2 sigma_SU))
//                 - sqrt((1-gamma)^2 sigma^2 + gamma^2 P
//                        - 2 gamma (1-gamma) sigma_SU))^+)^2 .
//
// Substituting t = 1/gamma turns the square root of the objective into
//   a t - sqrt(sigma^2 (t-1)^2 - 2 sigma_SU (t-1) + P),
// which is concave in t because sigma^2 P >= sigma_SU^2. Its maximizer has a
// closed form, used by GammaMethod::kClosedForm; GammaMethod::kGrid performs
// the log-grid plus golden-section search and serves as the reference route.

#include "ebound/core.hpp"

namespace ebound {

enum class GammaMethod { kClosedForm, kGrid };

struct GammaSearchConfig {
  double log_gamma_lo = -6.0;  ///< base-10 exponent of the smallest gamma searched
  double log_gamma_hi = 6.0;
  int coarse_points = 513;
  int refine_iters = 60;
  GammaMethod method = GammaMethod::kClosedForm;
};

struct SigmaSuSearchConfig {
  int grid_points = 2001;
  int refine_iters = 40;
};

void validate(const GammaSearchConfig& cfg);
void validate(const SigmaSuSearchConfig& cfg);

/// Objective of the inf-sup for one (sigma_SU, gamma). Throws DomainError for
/// gamma <= 0 or sigma_SU outside sigma_su_range(params).
double lb_inner(const ProblemParams& params, double sigma_su, double gamma);

/// gamma = (sigma^2 + sigma_SU) / (sigma^2 + P + 2 sigma_SU), the choice that
/// makes the bound vanish exactly up to the perfect-recovery rate. Empty when
/// the denominator is below 1e-12 or the value is not positive.
std::optional<double> gamma_converse(const ProblemParams& params, double sigma_su);

struct GammaSup {
  double value = 0.0;
  double gamma_star = 1.0;
};

/// sup over gamma > 0 of lb_inner. Always evaluates gamma = 1 and the converse
/// gamma as candidates, so the result dominates both.
///
/// When the supremum is only approached (gamma -> 0 at the rate-constraint
/// endpoint, or gamma -> infinity where the bound is zero) gamma_star is the
/// corresponding edge of the configured window.
GammaSup lb_sup_gamma(const ProblemParams& params, double sigma_su,
                      const GammaSearchConfig& cfg = {});

/// inf over sigma_SU of lb_sup_gamma: grid over sigma_su_range with both
/// endpoints, then golden refinement around the incumbent.
/// Throws FeasibilityError when P < 2^{2R} - 1.
BoundResult lower_bound_mmse(const ProblemParams& params, const SigmaSuSearchConfig& cfg = {},
                             const GammaSearchConfig& gcfg = {});

/// Earlier zero-rate bound ((sqrt(sigma^2/(sigma^2+P+2 sigma sqrt(P)+1)) - sqrt(P))^+)^2,
/// the gamma = 1, sigma_SU = sigma sqrt(P) specialization.
double old_lower_bound(double sigma, double power);

/// old_lower_bound wrapped as a BoundResult with its implied optimizers.
BoundResult legacy_lower_bound(double sigma, double power);

}  // namespace ebound
