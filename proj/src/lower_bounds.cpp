#include "ebound/lower_bounds.hpp"

#include <stdexcept>
#include <string>

#include "ebound/search.hpp"

namespace ebound {

namespace {

constexpr double kRadicandSlack = 1e-12;
constexpr double kDenominatorGuard = 1e-12;

double range_tolerance(const Interval& range) {
  return 1e-12 * (1.0 + std::abs(range.lo) + std::abs(range.hi));
}

void check_in_range(const ProblemParams& params, double sigma_su) {
  const Interval range = sigma_su_range(params);
  if (!std::isfinite(sigma_su) || !range.contains(sigma_su, range_tolerance(range)))
    throw DomainError("sigma_su=" + std::to_string(sigma_su) + " outside the admissible range for " +
                      describe(params));
}

// Per-point constants hoisted out of the sigma_SU and gamma loops.
struct Ctx {
  explicit Ctx(const ProblemParams& p, const GammaSearchConfig& cfg = {})
      : sigma(p.sigma),
        s2(p.sigma * p.sigma),
        power(p.power),
        gained(s2 * std::exp2(2.0 * p.rate)),
        gamma_lo(std::pow(10.0, cfg.log_gamma_lo)),
        gamma_hi(std::pow(10.0, cfg.log_gamma_hi)) {}
  double sigma, s2, power, gained, gamma_lo, gamma_hi;
};

// sqrt(sigma^2 2^{2R} / (1 + sigma^2 + P + 2 sigma_SU)); the denominator is >= 1
// on the admissible range.
double first_root(const Ctx& c, double sigma_su) {
  return std::sqrt(c.gained / (1.0 + c.s2 + c.power + 2.0 * sigma_su));
}

// E[((1-gamma) S - gamma U)^2] for E[SU] = sigma_SU. A nonnegative quadratic
// form; rounding may push it slightly below zero.
double second_radicand(const Ctx& c, double sigma_su, double gamma) {
  const double one_minus = 1.0 - gamma;
  const double q = one_minus * one_minus * c.s2 + gamma * gamma * c.power -
                   2.0 * gamma * one_minus * sigma_su;
  if (q >= 0.0) return q;
  const double scale = one_minus * one_minus * c.s2 + gamma * gamma * c.power +
                       2.0 * std::abs(gamma * one_minus * sigma_su);
  if (q >= -kRadicandSlack * std::max(1.0, scale)) return 0.0;
  throw std::logic_error("negative second-moment radicand in lower bound");
}

double inner_with_root(const Ctx& c, double a, double sigma_su, double gamma) {
  const double gap = positive_part(a - std::sqrt(second_radicand(c, sigma_su, gamma)));
  return gap * gap / (gamma * gamma);
}

// Exact sup over gamma > 0, using the concave reparametrization t = 1/gamma:
// sqrt(objective) = (a t - sqrt(Q(t-1)))^+ with Q(u) = sigma^2 u^2 - 2 sigma_SU u + P.
GammaSup sup_closed_form(const Ctx& c, double a, double sigma_su) {
  const double disc = std::max(0.0, c.s2 * c.power - sigma_su * sigma_su);
  const double root_disc = std::sqrt(disc);

  if (a >= c.sigma) {
    // Rate-constraint endpoint: the objective increases toward gamma -> 0.
    const double g = c.sigma + sigma_su / c.sigma;
    return {positive_part(g) * positive_part(g), c.gamma_lo};
  }
  const double slack = std::sqrt(c.s2 - a * a);
  const double w = a * root_disc / slack;
  const double u_star = (sigma_su + w) / c.s2;
  if (u_star <= -1.0) {
    // Decreasing on t > 0: sup is the t -> 0 limit, -sqrt(E[X^2]) <= 0.
    return {0.0, c.gamma_hi};
  }
  const double g = a * (1.0 + sigma_su / c.s2) - root_disc * slack / c.s2;
  const double gp = positive_part(g);
  return {gp * gp, 1.0 / (1.0 + u_star)};
}

GammaSup sup_grid(const Ctx& c, double a, double sigma_su, const GammaSearchConfig& cfg) {
  const auto objective = [&](double log_gamma) {
    return inner_with_root(c, a, sigma_su, std::pow(10.0, log_gamma));
  };
  const auto grid = linspace(cfg.log_gamma_lo, cfg.log_gamma_hi, cfg.coarse_points);
  const Extremum best = grid_golden_max(objective, grid, cfg.refine_iters);
  return {best.f, std::pow(10.0, best.x)};
}

std::optional<double> converse_gamma(const Ctx& c, double sigma_su) {
  const double denom = c.s2 + c.power + 2.0 * sigma_su;
  if (denom < kDenominatorGuard) return std::nullopt;
  const double gamma = (c.s2 + sigma_su) / denom;
  if (!(gamma > 0.0)) return std::nullopt;
  return gamma;
}

GammaSup sup_unchecked(const Ctx& c, double sigma_su, const GammaSearchConfig& cfg) {
  const double a = first_root(c, sigma_su);
  GammaSup best = cfg.method == GammaMethod::kClosedForm ? sup_closed_form(c, a, sigma_su)
                                                         : sup_grid(c, a, sigma_su, cfg);
  const auto consider = [&](double gamma) {
    const double v = inner_with_root(c, a, sigma_su, gamma);
    if (v > best.value || (v == best.value && gamma < best.gamma_star)) best = {v, gamma};
  };
  consider(1.0);
  if (const auto g = converse_gamma(c, sigma_su)) consider(*g);
  return best;
}

}  // namespace

void validate(const GammaSearchConfig& cfg) {
  if (!(cfg.log_gamma_lo < cfg.log_gamma_hi))
    throw DomainError("gamma search window must satisfy log_gamma_lo < log_gamma_hi");
  if (cfg.coarse_points < 3) throw DomainError("gamma search needs at least 3 coarse points");
  if (cfg.refine_iters < 0) throw DomainError("gamma refine_iters must be >= 0");
}

void validate(const SigmaSuSearchConfig& cfg) {
  if (cfg.grid_points < 3) throw DomainError("sigma_SU search needs at least 3 grid points");
  if (cfg.refine_iters < 0) throw DomainError("sigma_SU refine_iters must be >= 0");
}

double lb_inner(const ProblemParams& params, double sigma_su, double gamma) {
  validate(params);
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive and finite");
  check_in_range(params, sigma_su);
  const Ctx c(params);
  return inner_with_root(c, first_root(c, sigma_su), sigma_su, gamma);
}

std::optional<double> gamma_converse(const ProblemParams& params, double sigma_su) {
  return converse_gamma(Ctx(params), sigma_su);
}

GammaSup lb_sup_gamma(const ProblemParams& params, double sigma_su, const GammaSearchConfig& cfg) {
  validate(params);
  validate(cfg);
  check_in_range(params, sigma_su);
  return sup_unchecked(Ctx(params, cfg), sigma_su, cfg);
}

BoundResult lower_bound_mmse(const ProblemParams& params, const SigmaSuSearchConfig& cfg,
                             const GammaSearchConfig& gcfg) {
  validate(params);
  validate(cfg);
  validate(gcfg);
  const Interval range = sigma_su_range(params);

  const Ctx c(params, gcfg);
  const auto objective = [&](double sigma_su) { return sup_unchecked(c, sigma_su, gcfg).value; };

  Extremum best;
  if (range.width() <= 0.0) {
    best = {range.lo, objective(range.lo)};
  } else {
    best = grid_golden_min(objective, linspace(range.lo, range.hi, cfg.grid_points), cfg.refine_iters);
  }
  const GammaSup at_best = sup_unchecked(c, best.x, gcfg);
  BoundResult result;
  result.value = at_best.value;
  result.sigma_su_star = best.x;
  result.gamma_star = at_best.gamma_star;
  return result;
}

double old_lower_bound(double sigma, double power) {
  validate(ProblemParams{sigma, power, 0.0});
  const double s2 = sigma * sigma;
  const double root_p = std::sqrt(power);
  const double gap = positive_part(std::sqrt(s2 / (s2 + power + 2.0 * sigma * root_p + 1.0)) - root_p);
  return gap * gap;
}

BoundResult legacy_lower_bound(double sigma, double power) {
  BoundResult result;
  result.value = old_lower_bound(sigma, power);
  result.sigma_su_star = sigma * std::sqrt(power);
  result.gamma_star = 1.0;
  return result;
}

}  // namespace ebound
