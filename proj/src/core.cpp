#include "ebound/core.hpp"

#include <cstdio>
#include <limits>

namespace ebound {

void validate(const ProblemParams& params) {
  if (!std::isfinite(params.sigma) || !std::isfinite(params.power) || !std::isfinite(params.rate))
    throw DomainError("non-finite parameter: " + describe(params));
  if (!(params.sigma > 0.0)) throw DomainError("sigma must be positive: " + describe(params));
  if (params.power < 0.0) throw DomainError("power must be nonnegative: " + describe(params));
  if (params.rate < 0.0) throw DomainError("rate must be nonnegative: " + describe(params));
}

namespace {

constexpr double kFeasibilitySlack = 4 * std::numeric_limits<double>::epsilon();

}  // namespace

bool feasible(const ProblemParams& params) {
  validate(params);
  // A few ulps of slack so that R = 0.5 log2(1 + P) survives the round trip through 2^{2R} - 1.
  const double need = min_power_for_rate(params.rate);
  return params.power >= need - kFeasibilitySlack * (1.0 + need);
}

void require_feasible(const ProblemParams& params) {
  if (!feasible(params))
    throw FeasibilityError("reliable communication impossible, need P >= 2^{2R}-1: " +
                           describe(params));
}

Interval sigma_su_range(const ProblemParams& params) {
  require_feasible(params);
  const double sigma = params.sigma;
  const double corr = sigma * std::sqrt(params.power);
  const double rate_floor =
      0.5 * (min_power_for_rate(params.rate) - params.power - sigma * sigma);
  // At R = 0 the rate floor is -(P + sigma^2)/2 <= -sigma sqrt(P), so it never binds.
  const double lo = params.rate == 0.0 ? -corr : std::max(-corr, rate_floor);
  return {std::min(lo, corr), corr};
}

std::string describe(const ProblemParams& params) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(sigma=%.17g, P=%.17g, R=%.17g)", params.sigma, params.power,
                params.rate);
  return buf;
}

}  // namespace ebound
