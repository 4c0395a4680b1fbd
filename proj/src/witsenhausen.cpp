#include "ebound/witsenhausen.hpp"

#include <functional>
#include <unordered_map>

#include "ebound/search.hpp"

namespace ebound {

namespace {

using BoundEval = std::function<BoundResult(double)>;

// Memoizes a bound along one sigma row. Sweeps for different k at the same
// sigma share most of their power grid.
class CurveMemo {
 public:
  explicit CurveMemo(BoundEval eval) : eval_(std::move(eval)) {}

  const BoundResult& operator()(double power) {
    auto it = cache_.find(power);
    if (it == cache_.end()) it = cache_.emplace(power, eval_(power)).first;
    return it->second;
  }

 private:
  BoundEval eval_;
  std::unordered_map<double, BoundResult> cache_;
};

CostMinimum minimize_on_grid(double k, const std::vector<double>& powers, const BoundEval& eval,
                             int refine_iters) {
  const double k2 = k * k;
  const auto cost = [&](double p) { return k2 * p + eval(p).value; };
  const Extremum best = grid_golden_min(cost, powers, refine_iters);
  return {best.f, best.x, eval(best.x)};
}

BoundEval bound_evaluator(BoundKind kind, double sigma, double rate, const SearchConfigs& search) {
  return [kind, sigma, rate, search](double power) {
    return evaluate_bound(kind, ProblemParams{sigma, power, rate}, search);
  };
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive and finite");
}

void fill_bounds(SweepRow& row, const BoundResult& lower, const BoundResult& upper) {
  row.lower = lower.value;
  row.upper = upper.value;
  row.ratio = bound_ratio(upper.value, lower.value);
  row.sigma_su_star = lower.sigma_su_star;
  row.gamma_star = lower.gamma_star;
  row.alpha_star = upper.alpha_star;
  row.beta_star = upper.beta_star;
}

WeightedCostResult cost_pair(double k, const std::vector<double>& powers, const BoundEval& lower,
                             const BoundEval& upper, int refine_iters) {
  CostMinimum lo = minimize_on_grid(k, powers, lower, refine_iters);
  const CostMinimum up = minimize_on_grid(k, powers, upper, refine_iters);
  // The lower curve is also evaluated where the upper minimum was found, so
  // refinement on one side cannot leave j_lower above j_upper.
  const BoundResult at_up = lower(up.p_star);
  const double j_at_up = k * k * up.p_star + at_up.value;
  if (j_at_up < lo.j) lo = {j_at_up, up.p_star, at_up};
  return {k, lo.j, up.j, lo.p_star, up.p_star, lo.bound, up.bound};
}

}  // namespace

BoundKind as_bound_kind(LowerBoundKind kind) {
  return kind == LowerBoundKind::kNew ? BoundKind::kLowerNew : BoundKind::kLowerLegacy;
}

const char* to_string(LowerBoundKind kind) { return kind == LowerBoundKind::kNew ? "new" : "legacy"; }

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kLowerNew: return "lower-new";
    case BoundKind::kLowerLegacy: return "lower-legacy";
    case BoundKind::kUpper: return "upper";
  }
  return "?";
}

BoundResult evaluate_bound(BoundKind kind, const ProblemParams& params, const SearchConfigs& search) {
  switch (kind) {
    case BoundKind::kLowerNew:
      return lower_bound_mmse(params, search.sigma_su, search.gamma);
    case BoundKind::kLowerLegacy:
      validate(params);
      if (params.rate != 0.0) throw DomainError("the legacy lower bound is defined at rate 0 only");
      return legacy_lower_bound(params.sigma, params.power);
    case BoundKind::kUpper:
      return upper_bound_mmse(params, search.strategy);
  }
  throw DomainError("unknown bound kind");
}

std::vector<double> weighted_cost_powers(double k, double sigma, const PowerSweepConfig& cfg) {
  check_positive(k, "k");
  check_positive(sigma, "sigma");
  if (cfg.points < 2 || !(cfg.power_min > 0.0)) throw DomainError("invalid power sweep config");
  const double hi = std::max(100.0 * sigma * sigma, 100.0 / (k * k));
  auto grid = logspace(std::log10(cfg.power_min), std::log10(hi), cfg.points);
  grid.insert(grid.begin(), 0.0);
  return grid;
}

CostMinimum minimize_weighted_cost(double k, double sigma, BoundKind kind, const PowerSweepConfig& cfg,
                                   const SearchConfigs& search) {
  const auto powers = weighted_cost_powers(k, sigma, cfg);
  return minimize_on_grid(k, powers, bound_evaluator(kind, sigma, 0.0, search), cfg.refine_iters);
}

WeightedCostResult weighted_cost(double k, double sigma, LowerBoundKind kind, const PowerSweepConfig& cfg,
                                 const SearchConfigs& search) {
  const auto powers = weighted_cost_powers(k, sigma, cfg);
  return cost_pair(k, powers, bound_evaluator(as_bound_kind(kind), sigma, 0.0, search),
                   bound_evaluator(BoundKind::kUpper, sigma, 0.0, search), cfg.refine_iters);
}

SweepTable cost_ratio_surface(const std::vector<double>& ks, const std::vector<double>& sigmas,
                              LowerBoundKind kind, const PowerSweepConfig& cfg, const SearchConfigs& search,
                              Exec exec) {
  for (double k : ks) check_positive(k, "k");
  for (double s : sigmas) check_positive(s, "sigma");
  SweepTable table = SweepTable::grid("k", ks, "sigma", sigmas);
  for_each_index(sigmas.size(), exec, [&](std::size_t is) {
    const double sigma = sigmas[is];
    CurveMemo lower(bound_evaluator(as_bound_kind(kind), sigma, 0.0, search));
    CurveMemo upper(bound_evaluator(BoundKind::kUpper, sigma, 0.0, search));
    const BoundEval lower_eval = [&](double p) { return lower(p); };
    const BoundEval upper_eval = [&](double p) { return upper(p); };
    for (std::size_t ik = 0; ik < ks.size(); ++ik) {
      const auto powers = weighted_cost_powers(ks[ik], sigma, cfg);
      const WeightedCostResult w = cost_pair(ks[ik], powers, lower_eval, upper_eval, cfg.refine_iters);
      SweepRow& row = table.at(ik, is);
      fill_bounds(row, w.lower_at_star, w.upper_at_star);
      row.lower = w.j_lower;
      row.upper = w.j_upper;
      row.ratio = bound_ratio(w.j_upper, w.j_lower);
    }
  });
  return table;
}

SweepTable mmse_ratio_surface(const std::vector<double>& powers, const std::vector<double>& sigmas, double rate,
                              LowerBoundKind kind, const SearchConfigs& search, Exec exec) {
  for (double p : powers)
    for (double s : sigmas) require_feasible({s, p, rate});
  SweepTable table = SweepTable::grid("power", powers, "sigma", sigmas);
  for_each_index(table.rows.size(), exec, [&](std::size_t i) {
    SweepRow& row = table.rows[i];
    const ProblemParams params{row.axis2, row.axis1, rate};
    fill_bounds(row, evaluate_bound(as_bound_kind(kind), params, search),
                evaluate_bound(BoundKind::kUpper, params, search));
  });
  return table;
}

double power_for_mmse(double sigma, double target, double rate, BoundKind kind, const PowerInversionConfig& cfg,
                      const SearchConfigs& search) {
  validate(ProblemParams{sigma, 0.0, rate});
  if (!std::isfinite(target) || target < 0.0) throw DomainError("target distortion must be >= 0");
  if (kind == BoundKind::kLowerLegacy && rate != 0.0)
    throw DomainError("the legacy lower bound is defined at rate 0 only");
  if (cfg.grid_points < 2 || !(cfg.offset_min > 0.0) || !(cfg.bisect_rel_tol > 0.0))
    throw DomainError("invalid power inversion config");

  if (rate == 0.0 && target >= zero_power_mmse(sigma)) return 0.0;
  const double base = rate == 0.0 ? 0.0 : min_power_for_rate(rate);
  const auto bound = [&](double p) { return evaluate_bound(kind, {sigma, p, rate}, search).value; };
  if (bound(base) <= target) return base;

  double span = std::max(1.0, base);
  while (bound(base + span) > target) {
    span *= 2.0;
    if (span > cfg.power_ceiling) throw DomainError("target distortion not reached below the power ceiling");
  }

  const auto offsets = logspace(std::log10(cfg.offset_min * (1.0 + base)), std::log10(span), cfg.grid_points);
  double envelope = std::numeric_limits<double>::infinity();
  double lo = base;
  double hi = base + span;
  for (double off : offsets) {
    const double p = base + off;
    envelope = std::min(envelope, bound(p));
    if (envelope <= target) {
      hi = p;
      break;
    }
    lo = p;
  }
  // The envelope at lo is above target, so on [lo, hi] it drops to the target
  // exactly where the bound itself first does.
  while (hi - lo > cfg.bisect_rel_tol * (1.0 + hi)) {
    const double mid = 0.5 * (lo + hi);
    (bound(mid) <= target ? hi : lo) = mid;
  }
  return hi;
}

SweepTable power_ratio_surface(const std::vector<double>& fractions, const std::vector<double>& sigmas,
                               double rate, LowerBoundKind kind, const PowerInversionConfig& cfg,
                               const SearchConfigs& search, Exec exec) {
  for (double f : fractions)
    if (!(f >= 0.0) || !std::isfinite(f)) throw DomainError("mmse fractions must be >= 0");
  for (double s : sigmas) check_positive(s, "sigma");
  SweepTable table = SweepTable::grid("mmse_fraction", fractions, "sigma", sigmas);
  for_each_index(table.rows.size(), exec, [&](std::size_t i) {
    SweepRow& row = table.rows[i];
    const double target = row.axis1 * zero_power_mmse(row.axis2);
    const double p_lower = power_for_mmse(row.axis2, target, rate, as_bound_kind(kind), cfg, search);
    const double p_upper = power_for_mmse(row.axis2, target, rate, BoundKind::kUpper, cfg, search);
    row.lower = p_lower;
    row.upper = p_upper;
    row.ratio = bound_ratio(p_upper, p_lower);
  });
  return table;
}

SweepTable mmse_vs_rate(double sigma, double power, const std::vector<double>& rates, const SearchConfigs& search,
                        Exec exec) {
  for (double r : rates) require_feasible({sigma, power, r});
  SweepTable table = SweepTable::grid("rate", rates, "sigma", {sigma});
  for_each_index(table.rows.size(), exec, [&](std::size_t i) {
    SweepRow& row = table.rows[i];
    const ProblemParams params{sigma, power, row.axis1};
    fill_bounds(row, evaluate_bound(BoundKind::kLowerNew, params, search),
                evaluate_bound(BoundKind::kUpper, params, search));
  });
  return table;
}

}  // namespace ebound
