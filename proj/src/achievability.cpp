#include "ebound/achievability.hpp"

#include <limits>
#include <random>
#include <vector>

#include "ebound/search.hpp"

namespace ebound {

namespace {

constexpr double kBetaSlack = 1e-12;
// Matches the feasibility slack in core.cpp: a few ulps, so R = 0.5 log2(1 + P)
// stays feasible after rounding.
constexpr double kRateSlack = 4 * std::numeric_limits<double>::epsilon();
constexpr std::uint64_t kMcChunk = 1u << 16;

struct AlphaChoice {
  double alpha = 0.0;
  double mmse = 0.0;
};

// p s (1 - alpha)^2 / (p s (1 - alpha)^2 + p + alpha^2 s)
double mmse_from_split(const PowerSplit& split, double alpha) {
  const double s = split.host_var;
  const double p = split.dpc_power;
  const double n = p * s * (1.0 - alpha) * (1.0 - alpha);
  return n / (n + p + alpha * alpha * s);
}

double rate_from_split(const PowerSplit& split, double alpha) {
  const double s = split.host_var;
  const double p = split.dpc_power;
  const double det = p * s * (1.0 - alpha) * (1.0 - alpha) + p + alpha * alpha * s;
  return 0.5 * std::log2(p * (p + s + 1.0) / det);
}

PowerSplit split_unchecked(double sigma, double power, double beta) {
  const double s2 = sigma * sigma;
  return {s2 * (1.0 - beta) * (1.0 - beta), std::max(0.0, power - beta * beta * s2)};
}

// {alpha : p s (1-alpha)^2 + p + alpha^2 s <= p (p + s + 1) 2^{-2R}} within the window.
// The quadratic's quarter-discriminant factors as s p (s + p + 1) f with
// f = (p - (2^{2R} - 1)) / 2^{2R}: the DPC power alone must carry the rate.
std::optional<Interval> feasible_alphas(const PowerSplit& split, double rate,
                                        const StrategySearchConfig& cfg) {
  const double s = split.host_var;
  const double p = split.dpc_power;
  if (!(p > 0.0)) return std::nullopt;
  const double gain = std::exp2(2.0 * rate);
  double f = (p - (gain - 1.0)) / gain;
  if (f < 0.0) {
    if (f < -kRateSlack) return std::nullopt;
    f = 0.0;
  }
  // Host fully cancelled: the rate does not depend on alpha.
  if (!(s > 0.0)) return Interval{cfg.alpha_lo, cfg.alpha_hi};
  const double lead = s * (p + 1.0);
  const double center = p / (p + 1.0);
  const double half = std::sqrt(s * p * (s + p + 1.0) * f) / lead;
  const double lo = std::max(center - half, cfg.alpha_lo);
  const double hi = std::min(center + half, cfg.alpha_hi);
  if (lo > hi) return std::nullopt;
  return Interval{lo, hi};
}

std::optional<AlphaChoice> best_alpha(const PowerSplit& split, double rate,
                                      const StrategySearchConfig& cfg) {
  const auto range = feasible_alphas(split, rate, cfg);
  if (!range) return std::nullopt;
  // The distortion decreases on (-p/s, 1) and increases on (1, inf), so the
  // minimizer is alpha = 1 clamped into the interval, unless the interval
  // reaches below -p/s, where its left end can win.
  const double candidates[] = {range->lo, std::clamp(1.0, range->lo, range->hi), range->hi};
  AlphaChoice best{candidates[0], mmse_from_split(split, candidates[0])};
  for (double a : candidates) {
    const double m = mmse_from_split(split, a);
    if (m < best.mmse || (m == best.mmse && a < best.alpha)) best = {a, m};
  }
  return best;
}

BoundResult make_upper(double sigma, double value, std::optional<double> alpha, double beta) {
  BoundResult r;
  r.value = value;
  r.sigma_su_star = -beta * sigma * sigma;
  r.alpha_star = alpha;
  r.beta_star = beta;
  return r;
}

struct Incumbent {
  double beta = 0.0;
  double alpha = 0.0;
  double mmse = std::numeric_limits<double>::infinity();
  bool found = false;
};

void consider_strategy(Incumbent& best, double beta, double alpha, double mmse) {
  if (std::isnan(mmse) || !std::isfinite(mmse)) return;
  if (!best.found || mmse < best.mmse ||
      (mmse == best.mmse && (beta < best.beta || (beta == best.beta && alpha < best.alpha)))) {
    best = {beta, alpha, mmse, true};
  }
}

Incumbent search_profile(const ProblemParams& params, double beta_max, const StrategySearchConfig& cfg) {
  const auto profile = [&](double beta) {
    const auto choice = best_alpha(split_unchecked(params.sigma, params.power, beta), params.rate, cfg);
    return choice ? choice->mmse : std::numeric_limits<double>::infinity();
  };
  const auto betas = beta_max > 0.0 ? linspace(0.0, beta_max, cfg.beta_points) : std::vector<double>{0.0};
  const Extremum ex = grid_golden_min(profile, betas, cfg.refine_iters);
  Incumbent best;
  if (std::isnan(ex.x) || !std::isfinite(ex.f)) return best;
  const auto choice = best_alpha(split_unchecked(params.sigma, params.power, ex.x), params.rate, cfg);
  consider_strategy(best, ex.x, choice->alpha, choice->mmse);
  return best;
}

// alpha minimum at one beta: grid, golden between the neighbours of the grid
// argmin, then bisection toward the rate boundary on the side of alpha = 1.
Extremum grid_alpha(const ProblemParams& params, double beta, const std::vector<double>& alphas,
                    const StrategySearchConfig& cfg) {
  const PowerSplit split = split_unchecked(params.sigma, params.power, beta);
  const auto f = [&](double alpha) {
    if (!(split.dpc_power > 0.0) || rate_from_split(split, alpha) < params.rate)
      return std::numeric_limits<double>::infinity();
    return mmse_from_split(split, alpha);
  };
  Extremum best;
  for (double alpha : alphas) consider_min(best, alpha, f(alpha));
  if (!std::isfinite(best.f)) return best;

  const double h = alphas[1] - alphas[0];
  const Extremum g = golden_min(f, std::max(cfg.alpha_lo, best.x - h), std::min(cfg.alpha_hi, best.x + h),
                                cfg.refine_iters);
  if (!std::isnan(g.x)) consider_min(best, g.x, g.f);
  const double toward = best.x < 1.0 ? std::min(cfg.alpha_hi, best.x + h) : std::max(cfg.alpha_lo, best.x - h);
  if (!std::isfinite(f(toward))) {
    double inside = best.x;
    double outside = toward;
    for (int it = 0; it < cfg.refine_iters; ++it) {
      const double mid = 0.5 * (inside + outside);
      (std::isfinite(f(mid)) ? inside : outside) = mid;
    }
    consider_min(best, inside, f(inside));
  }
  return best;
}

// Reference route: the full (alpha, beta) grid, searched as alpha minima per
// grid beta, then golden refinement in beta between the neighbouring cells.
// Refining one coordinate at a time stalls on the curved rate boundary, where
// the objective is much steeper across the boundary than along it.
Incumbent search_grid(const ProblemParams& params, double beta_max, const StrategySearchConfig& cfg) {
  const auto alphas = linspace(cfg.alpha_lo, cfg.alpha_hi, cfg.alpha_points);
  const auto betas = beta_max > 0.0 ? linspace(0.0, beta_max, cfg.beta_points) : std::vector<double>{0.0};
  Incumbent best;
  for (double beta : betas) {
    const Extremum e = grid_alpha(params, beta, alphas, cfg);
    consider_strategy(best, beta, e.x, e.f);
  }
  if (!best.found || betas.size() < 2) return best;
  const std::size_t best_i = static_cast<std::size_t>(std::find(betas.begin(), betas.end(), best.beta) - betas.begin());

  const auto profile = [&](double b) { return grid_alpha(params, b, alphas, cfg).f; };
  const Extremum eb = golden_min(profile, betas[best_i == 0 ? 0 : best_i - 1],
                                 betas[std::min(best_i + 1, betas.size() - 1)], cfg.refine_iters);
  if (!std::isnan(eb.x) && std::isfinite(eb.f)) {
    const Extremum ea = grid_alpha(params, eb.x, alphas, cfg);
    consider_strategy(best, eb.x, ea.x, ea.f);
  }
  return best;
}

using RateObjective = double (*)(double sigma, double power, double sigma_su);

double capacity_objective(double sigma, double power, double sigma_su) {
  const double s2 = sigma * sigma;
  const double e = s2 + power + 2.0 * sigma_su;
  if (e < 1e-12) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log2((power * s2 - sigma_su * sigma_su) * (1.0 + e) / (s2 * e));
}

double alpha1_objective(double sigma, double power, double sigma_su) {
  const double s2 = sigma * sigma;
  const double e = power + s2 + 2.0 * sigma_su;
  if (e < 1e-12) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log2((power - sigma_su * sigma_su / s2) * (e + 1.0) / e);
}

RateResult max_rate(RateObjective objective, double sigma, double power, const RateSearchConfig& cfg) {
  validate(ProblemParams{sigma, power, 0.0});
  if (!(power > 0.0)) throw DomainError("rate search requires power > 0");
  if (cfg.grid_points < 3 || cfg.refine_iters < 0) throw DomainError("invalid rate search config");
  const auto f = [&](double x) { return objective(sigma, power, x); };
  const Extremum best = grid_golden_max(f, linspace(-sigma * std::sqrt(power), 0.0, cfg.grid_points),
                                        cfg.refine_iters);
  return {best.f, best.x};
}

}  // namespace

double max_beta(double sigma, double power) { return std::min(1.0, std::sqrt(power) / sigma); }

PowerSplit split_power(double sigma, double power, const StrategyParams& sp) {
  validate(ProblemParams{sigma, power, 0.0});
  if (!std::isfinite(sp.alpha)) throw DomainError("alpha must be finite");
  const double bmax = max_beta(sigma, power);
  if (!(sp.beta >= 0.0) || sp.beta > bmax + kBetaSlack * (1.0 + bmax))
    throw DomainError("beta must lie in [0, min(1, sqrt(P)/sigma)]");
  return split_unchecked(sigma, power, std::min(sp.beta, bmax));
}

double dpc_rate(double sigma, double power, const StrategyParams& sp) {
  const PowerSplit split = split_power(sigma, power, sp);
  if (!(split.dpc_power > 0.0)) throw DegenerateError("dpc_rate: no power left for the DPC part");
  return rate_from_split(split, sp.alpha);
}

double observation_det(double sigma, double power, const StrategyParams& sp) {
  const PowerSplit split = split_power(sigma, power, sp);
  const double s = split.host_var;
  const double p = split.dpc_power;
  return p * s * (1.0 - sp.alpha) * (1.0 - sp.alpha) + p + sp.alpha * sp.alpha * s;
}

std::array<double, 2> lmmse_weights(double sigma, double power, const StrategyParams& sp) {
  const PowerSplit split = split_power(sigma, power, sp);
  if (!(split.dpc_power > 0.0)) throw DegenerateError("lmmse: no power left for the DPC part");
  const double s = split.host_var;
  const double p = split.dpc_power;
  const double det = observation_det(sigma, power, sp);
  if (!(det > 1e-300)) throw DegenerateError("lmmse: singular (Y, V) covariance");
  // K^{-1} c with K = [[s+p+1, as+p], [as+p, a^2 s+p]], c = [s+p, as+p].
  return {p * s * (1.0 - sp.alpha) * (1.0 - sp.alpha) / det, (sp.alpha * s + p) / det};
}

double lmmse_x(double sigma, double power, const StrategyParams& sp) {
  const PowerSplit split = split_power(sigma, power, sp);
  if (!(split.dpc_power > 0.0)) throw DegenerateError("lmmse: no power left for the DPC part");
  if (!(observation_det(sigma, power, sp) > 1e-300))
    throw DegenerateError("lmmse: singular (Y, V) covariance");
  return std::clamp(mmse_from_split(split, sp.alpha), 0.0, split.host_var + split.dpc_power);
}

double linear_only_mmse(double sigma, double power, double beta) {
  const PowerSplit split = split_power(sigma, power, {0.0, beta});
  return split.host_var / (split.host_var + 1.0);
}

void validate(const StrategySearchConfig& cfg) {
  if (!(cfg.alpha_lo < cfg.alpha_hi) || !std::isfinite(cfg.alpha_lo) || !std::isfinite(cfg.alpha_hi))
    throw DomainError("alpha window must satisfy alpha_lo < alpha_hi");
  if (cfg.alpha_points < 3 || cfg.beta_points < 3) throw DomainError("strategy grids need >= 3 points");
  if (cfg.refine_iters < 0) throw DomainError("strategy refine_iters must be >= 0");
}

std::optional<Interval> rate_feasible_alphas(double sigma, double power, double rate, double beta,
                                             const StrategySearchConfig& cfg) {
  validate(ProblemParams{sigma, power, rate});
  return feasible_alphas(split_power(sigma, power, {0.0, beta}), rate, cfg);
}

BoundResult upper_bound_mmse(const ProblemParams& params, const StrategySearchConfig& cfg) {
  validate(params);
  validate(cfg);
  require_feasible(params);
  const double beta_max = max_beta(params.sigma, params.power);

  const Incumbent coded = cfg.method == StrategyMethod::kProfile ? search_profile(params, beta_max, cfg)
                                                                  : search_grid(params, beta_max, cfg);
  std::optional<BoundResult> best;
  if (coded.found) best = make_upper(params.sigma, coded.mmse, coded.alpha, coded.beta);
  if (params.rate == 0.0) {
    const double lin = linear_only_mmse(params.sigma, params.power, beta_max);
    if (!best || lin < best->value || (lin == best->value && beta_max < *best->beta_star))
      best = make_upper(params.sigma, lin, std::nullopt, beta_max);
  }
  if (!best) throw FeasibilityError("no linear+DPC strategy meets the rate: " + describe(params));
  return *best;
}

RateResult capacity(double sigma, double power, const RateSearchConfig& cfg) {
  return max_rate(&capacity_objective, sigma, power, cfg);
}

RateResult achievable_rate_alpha1(double sigma, double power, const RateSearchConfig& cfg) {
  return max_rate(&alpha1_objective, sigma, power, cfg);
}

McEstimate mc_lmmse_check(double sigma, double power, const StrategyParams& sp, const McConfig& mc,
                          Exec exec) {
  if (mc.samples < 10'000) throw DomainError("Monte Carlo needs at least 1e4 samples");
  const PowerSplit split = split_power(sigma, power, sp);
  const double s = split.host_var;
  const double p = split.dpc_power;
  const bool uncoded = !(p > 0.0);
  const std::array<double, 2> w =
      uncoded ? std::array<double, 2>{s / (s + 1.0), 0.0} : lmmse_weights(sigma, power, sp);
  const double host_scale = 1.0 - std::min(sp.beta, max_beta(sigma, power));
  const double root_p = std::sqrt(p);

  const std::uint64_t chunks = (mc.samples + kMcChunk - 1) / kMcChunk;
  std::vector<std::array<double, 2>> partial(chunks);
  for_each_index(chunks, exec, [&](std::size_t c) {
    const std::uint64_t begin = c * kMcChunk;
    const std::uint64_t end = std::min(mc.samples, begin + kMcChunk);
    std::seed_seq seq{static_cast<std::uint32_t>(mc.seed), static_cast<std::uint32_t>(mc.seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(std::uint64_t{c} >> 32)};
    std::mt19937_64 gen(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    double sum2 = 0.0;
    double sum4 = 0.0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double host = host_scale * sigma * normal(gen);
      const double code = root_p * normal(gen);
      const double noise = normal(gen);
      const double x = host + code;
      const double y = x + noise;
      const double v = sp.alpha * host + code;
      const double e = x - w[0] * y - w[1] * v;
      const double e2 = e * e;
      sum2 += e2;
      sum4 += e2 * e2;
    }
    partial[c] = {sum2, sum4};
  });

  double sum2 = 0.0;
  double sum4 = 0.0;
  for (const auto& part : partial) {
    sum2 += part[0];
    sum4 += part[1];
  }
  const auto n = static_cast<double>(mc.samples);
  const double mean = sum2 / n;
  const double var = std::max(0.0, (sum4 / n - mean * mean) * n / (n - 1.0));
  return {mean, std::sqrt(var / n)};
}

}  // namespace ebound
