// The `validate` subcommand: closed-form anchors, cross-checks between
// independent routes and a Monte Carlo check of the estimator, on points drawn
// from the --seed stream.

#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include "cli.hpp"

namespace ebound::cli {

namespace {

struct Check {
  bool ok = true;
  double worst = 0.0;
  std::string note;

  void track(double err, double tol) {
    if (std::isnan(err) || err > tol) ok = false;
    if (!(err <= worst)) worst = err;
  }
};

struct Sampler {
  std::mt19937_64 gen;
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen); }
  double log_uniform(double lo, double hi) { return std::pow(10.0, uniform(std::log10(lo), std::log10(hi))); }
};

Check zero_power(const SearchConfigs& search) {
  Check c;
  for (double sigma : {0.1, 1.0, 10.0}) {
    const ProblemParams p{sigma, 0.0, 0.0};
    const double exact = zero_power_mmse(sigma);
    c.track(std::abs(evaluate_bound(BoundKind::kLowerNew, p, search).value - exact), 1e-12);
    c.track(std::abs(evaluate_bound(BoundKind::kUpper, p, search).value - exact), 1e-12);
  }
  return c;
}

Check capacity_equality(Sampler& rng) {
  Check c;
  for (int i = 0; i < 20; ++i) {
    const double sigma = rng.log_uniform(0.1, 10.0);
    const double power = rng.log_uniform(0.1, 10.0);
    const double cap = capacity(sigma, power).rate;
    c.track(std::abs(cap - achievable_rate_alpha1(sigma, power).rate), 1e-9);
    c.track(positive_part(cap - max_rate_for_power(power)), 1e-12);
  }
  return c;
}

Check sandwich(Sampler& rng, const SearchConfigs& search) {
  Check c;
  for (int i = 0; i < 100; ++i) {
    const double sigma = rng.log_uniform(0.1, 10.0);
    const double power = rng.log_uniform(0.01, 10.0);
    const double rate = i % 2 == 0 ? 0.0 : rng.uniform(0.0, max_rate_for_power(power));
    const ProblemParams p{sigma, power, rate};
    const double lo = evaluate_bound(BoundKind::kLowerNew, p, search).value;
    const double up = evaluate_bound(BoundKind::kUpper, p, search).value;
    c.track(lo - up, 1e-10);
  }
  return c;
}

Check dominance(Sampler& rng, const SearchConfigs& search) {
  Check c;
  for (int i = 0; i < 200; ++i) {
    const ProblemParams p{rng.log_uniform(0.01, 100.0), rng.log_uniform(1e-4, 100.0), 0.0};
    const double fresh = evaluate_bound(BoundKind::kLowerNew, p, search).value;
    const double legacy = evaluate_bound(BoundKind::kLowerLegacy, p, search).value;
    c.track(legacy - fresh, 1e-12);
  }
  return c;
}

Check gamma_routes(Sampler& rng) {
  Check c;
  GammaSearchConfig grid;
  grid.method = GammaMethod::kGrid;
  for (int i = 0; i < 50; ++i) {
    const double sigma = rng.log_uniform(0.1, 10.0);
    const double power = rng.log_uniform(0.01, 10.0);
    const ProblemParams p{sigma, power, rng.uniform(0.0, max_rate_for_power(power))};
    const Interval range = sigma_su_range(p);
    const double su = rng.uniform(range.lo, range.hi);
    const double exact = lb_sup_gamma(p, su).value;
    const double searched = lb_sup_gamma(p, su, grid).value;
    // The grid can only fall short of the true supremum.
    c.track((searched - exact) / std::max(1e-12, exact), 1e-9);
    c.track((exact - searched) / std::max(1e-12, exact), 1e-6);
  }
  return c;
}

Check alpha_one(Sampler& rng) {
  Check c;
  for (int i = 0; i < 100; ++i) {
    const double sigma = rng.log_uniform(0.1, 10.0);
    const double power = rng.log_uniform(0.01, 10.0);
    const double beta = rng.uniform(0.0, max_beta(sigma, power));
    if (split_power(sigma, power, {1.0, beta}).dpc_power <= 0.0) continue;
    c.track(std::abs(lmmse_x(sigma, power, {1.0, beta})), 1e-15);
  }
  return c;
}

Check monte_carlo(Sampler& rng, std::uint64_t samples, std::uint64_t seed) {
  Check c;
  for (int i = 0; i < 5; ++i) {
    const double sigma = rng.log_uniform(0.3, 3.0);
    const double power = rng.log_uniform(0.1, 3.0);
    const StrategyParams sp{rng.uniform(0.0, 1.0), rng.uniform(0.0, 0.9 * max_beta(sigma, power))};
    const McEstimate mc = mc_lmmse_check(sigma, power, sp, {samples, seed + static_cast<std::uint64_t>(i)});
    const double exact = lmmse_x(sigma, power, sp);
    c.track(std::abs(mc.mmse - exact) / std::max(mc.std_error, 1e-300), 4.0);
  }
  c.note = "(error in standard errors)";
  return c;
}

Check feasibility_edge(const SearchConfigs& search) {
  Check c;
  const double sigma = std::sqrt((std::sqrt(5.0) - 1.0) / 2.0);
  try {
    evaluate_bound(BoundKind::kLowerNew, {sigma, 1.0, 0.5}, search);
    evaluate_bound(BoundKind::kUpper, {sigma, 1.0, 0.5}, search);
  } catch (const std::exception&) {
    c.ok = false;
    c.note = "P = 1 rejected at R = 0.5";
  }
  try {
    evaluate_bound(BoundKind::kLowerNew, {sigma, 1.0 - 1e-6, 0.5}, search);
    c.ok = false;
    c.note = "P = 1 - 1e-6 accepted at R = 0.5";
  } catch (const FeasibilityError&) {
  }
  return c;
}

}  // namespace

bool run_validation(const RunConfig& cfg, std::ostream& out) {
  const std::uint64_t seed = cfg.seed.value_or(0);
  Sampler rng{std::mt19937_64(seed)};
  if (cfg.samples < 10'000) throw DomainError("validate needs --samples >= 10000");

  const std::vector<std::pair<const char*, std::function<Check()>>> checks{
      {"zero_power_tightness", [&] { return zero_power(cfg.search); }},
      {"capacity_alpha1_equality", [&] { return capacity_equality(rng); }},
      {"lower_below_upper", [&] { return sandwich(rng, cfg.search); }},
      {"new_dominates_legacy", [&] { return dominance(rng, cfg.search); }},
      {"gamma_closed_form_vs_grid", [&] { return gamma_routes(rng); }},
      {"alpha_one_exact", [&] { return alpha_one(rng); }},
      {"lmmse_vs_monte_carlo", [&] { return monte_carlo(rng, cfg.samples, seed); }},
      {"feasibility_edge_rate_half", [&] { return feasibility_edge(cfg.search); }},
  };

  int passed = 0;
  for (const auto& [name, fn] : checks) {
    Check c;
    try {
      c = fn();
    } catch (const std::exception& e) {
      c.ok = false;
      c.note = std::string("threw: ") + e.what();
    }
    char worst[32];
    std::snprintf(worst, sizeof worst, "%.3g", c.worst);
    out << (c.ok ? "PASS " : "FAIL ") << name << " worst=" << worst;
    if (!c.note.empty()) out << ' ' << c.note;
    out << '\n';
    passed += c.ok ? 1 : 0;
  }
  out << passed << '/' << checks.size() << " checks passed (seed " << seed << ")\n";
  return passed == static_cast<int>(checks.size());
}

}  // namespace ebound::cli
