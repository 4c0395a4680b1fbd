#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace ebound::cli {

namespace {

// Flag values as typed; subcommand-specific defaults are applied after parsing.
struct RawFlags {
  std::optional<double> kmin, kmax, smin, smax, pmin, pmax, rmin, rmax, fmin, fmax;
  std::optional<int> n;
  std::optional<int> ns;  // sigma points, when they differ from --n
};

std::vector<std::string> echo_argv(int argc, const char* const* argv) {
  std::vector<std::string> out{"ebound"};
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--threads") {
      ++i;
      continue;
    }
    if (a.rfind("--threads=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

std::string join(const std::vector<std::string>& parts) {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += ' ';
    s += p;
  }
  return s;
}

void add_search_flags(CLI::App* sub, RunConfig& cfg) {
  const std::map<std::string, GammaMethod> gamma_methods{{"closed", GammaMethod::kClosedForm},
                                                         {"grid", GammaMethod::kGrid}};
  const std::map<std::string, StrategyMethod> strategy_methods{{"profile", StrategyMethod::kProfile},
                                                               {"grid", StrategyMethod::kGrid}};
  sub->add_option("--su-grid", cfg.search.sigma_su.grid_points, "sigma_SU grid points")->capture_default_str();
  sub->add_option("--gamma-method", cfg.search.gamma.method, "sup over gamma: closed or grid")
      ->transform(CLI::CheckedTransformer(gamma_methods, CLI::ignore_case));
  sub->add_option("--beta-grid", cfg.search.strategy.beta_points, "beta grid points")->capture_default_str();
  sub->add_option("--strategy-method", cfg.search.strategy.method, "alpha/beta search: profile or grid")
      ->transform(CLI::CheckedTransformer(strategy_methods, CLI::ignore_case));
}

void add_bound_flag(CLI::App* sub, RunConfig& cfg) {
  const std::map<std::string, LowerBoundKind> kinds{{"new", LowerBoundKind::kNew},
                                                    {"legacy", LowerBoundKind::kLegacy}};
  sub->add_option("--bound", cfg.bound, "lower bound: new or legacy")
      ->transform(CLI::CheckedTransformer(kinds, CLI::ignore_case));
}

GridSpec resolve(std::optional<double> lo, std::optional<double> hi, std::optional<int> n, GridSpec def) {
  if (lo) def.min = *lo;
  if (hi) def.max = *hi;
  if (n) def.n = *n;
  return def;
}

void check_grid(const GridSpec& g, const char* name) {
  if (g.n < 1) throw DomainError(std::string(name) + ": --n must be >= 1");
  if (!std::isfinite(g.min) || !std::isfinite(g.max) || g.max < g.min)
    throw DomainError(std::string(name) + ": grid needs finite min <= max");
  if (g.log && !(g.min > 0.0)) throw DomainError(std::string(name) + ": log grid needs min > 0");
}

void fill_lower(SweepRow& row, const BoundResult& b) {
  row.lower = b.value;
  row.sigma_su_star = b.sigma_su_star;
  row.gamma_star = b.gamma_star;
}

void fill_upper(SweepRow& row, const BoundResult& b) {
  row.upper = b.value;
  row.alpha_star = b.alpha_star;
  row.beta_star = b.beta_star;
}

void check_legacy_rate(const RunConfig& cfg) {
  if (cfg.bound == LowerBoundKind::kLegacy && cfg.rate != 0.0)
    throw DomainError("the legacy lower bound is defined at rate 0 only");
}

SweepTable single_point(const RunConfig& cfg) {
  const ProblemParams params{cfg.sigma, *cfg.power, cfg.rate};
  require_feasible(params);
  if (cfg.subcommand != "upper") check_legacy_rate(cfg);
  SweepTable t = SweepTable::grid("power", {params.power}, "sigma", {params.sigma});
  SweepRow& row = t.rows.front();
  if (cfg.subcommand != "upper") fill_lower(row, evaluate_bound(as_bound_kind(cfg.bound), params, cfg.search));
  if (cfg.subcommand != "lower") {
    const BoundResult up = evaluate_bound(BoundKind::kUpper, params, cfg.search);
    fill_upper(row, up);
    if (cfg.subcommand == "upper") row.sigma_su_star = up.sigma_su_star;
  }
  if (row.lower && row.upper) row.ratio = bound_ratio(*row.upper, *row.lower);
  t.metadata.emplace_back("rate", format_number(cfg.rate));
  if (cfg.subcommand != "upper") t.metadata.emplace_back("bound", to_string(cfg.bound));
  return t;
}

SweepTable capacity_table(const RunConfig& cfg, Exec exec) {
  const std::vector<double> powers = cfg.power ? std::vector<double>{*cfg.power} : cfg.p.values();
  for (double p : powers) validate(ProblemParams{cfg.sigma, p, 0.0});
  for (double p : powers)
    if (!(p > 0.0)) throw DomainError("capacity needs power > 0");
  SweepTable t = SweepTable::grid("power", powers, "sigma", {cfg.sigma});
  for_each_index(t.rows.size(), exec, [&](std::size_t i) {
    SweepRow& row = t.rows[i];
    const RateResult c = capacity(row.axis2, row.axis1);
    row.lower = achievable_rate_alpha1(row.axis2, row.axis1).rate;
    row.upper = c.rate;
    row.sigma_su_star = c.sigma_su_star;
  });
  t.metadata.emplace_back("columns", "lower = alpha=1 achievable rate, upper = capacity C(P), both in bits");
  return t;
}

SweepTable compute_table(const RunConfig& cfg) {
  validate(cfg.search.sigma_su);
  validate(cfg.search.gamma);
  validate(cfg.search.strategy);
  const Exec exec = cfg.threads > 1 ? Exec::kParallel : Exec::kSerial;
  const std::string& sc = cfg.subcommand;

  if (sc == "point" || sc == "lower" || sc == "upper") return single_point(cfg);
  if (sc == "capacity") {
    if (!cfg.power) check_grid(cfg.p, "power");
    return capacity_table(cfg, exec);
  }
  if (sc == "cost-ratio") {
    check_grid(cfg.k, "k");
    check_grid(cfg.s, "sigma");
    SweepTable t = cost_ratio_surface(cfg.k.values(), cfg.s.values(), cfg.bound, {}, cfg.search, exec);
    t.metadata.emplace_back("bound", to_string(cfg.bound));
    t.metadata.emplace_back("columns", "lower/upper = minimized cost k^2 P + bound at rate 0");
    return t;
  }
  if (sc == "mmse-ratio") {
    check_grid(cfg.p, "power");
    check_grid(cfg.s, "sigma");
    check_legacy_rate(cfg);
    SweepTable t = mmse_ratio_surface(cfg.p.values(), cfg.s.values(), cfg.rate, cfg.bound, cfg.search, exec);
    t.metadata.emplace_back("rate", format_number(cfg.rate));
    t.metadata.emplace_back("bound", to_string(cfg.bound));
    return t;
  }
  if (sc == "power-ratio") {
    check_grid(cfg.f, "mmse_fraction");
    check_grid(cfg.s, "sigma");
    check_legacy_rate(cfg);
    SweepTable t =
        power_ratio_surface(cfg.f.values(), cfg.s.values(), cfg.rate, cfg.bound, {}, cfg.search, exec);
    t.metadata.emplace_back("rate", format_number(cfg.rate));
    t.metadata.emplace_back("bound", to_string(cfg.bound));
    t.metadata.emplace_back("columns", "lower/upper = least power reaching mmse_fraction * sigma^2/(sigma^2+1)");
    return t;
  }
  if (sc == "rate-sweep") {
    check_grid(cfg.r, "rate");
    SweepTable t = mmse_vs_rate(cfg.sigma, *cfg.power, cfg.r.values(), cfg.search, exec);
    t.metadata.emplace_back("power", format_number(*cfg.power));
    return t;
  }
  throw std::logic_error("unhandled subcommand " + sc);
}

}  // namespace

std::vector<double> GridSpec::values() const {
  if (n == 1) return {min};
  return log ? logspace(std::log10(min), std::log10(max), n) : linspace(min, max, n);
}

RunConfig parse(int argc, const char* const* argv) {
  RunConfig cfg;
  cfg.threads = threads_from_env(1);
  RawFlags raw;

  CLI::App app{"Bounds on distortion, power and rate for Gaussian information embedding"};
  app.name("ebound");
  app.set_version_flag("--version", std::string(EBOUND_VERSION));
  app.require_subcommand(1, 1);
  app.fallthrough(false);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (default: EBOUND_THREADS or 1)")
        ->check(CLI::PositiveNumber);
    sub->add_option("-o,--output", cfg.output, "CSV output path (default: stdout)");
    add_search_flags(sub, cfg);
  };

  for (const char* name : {"point", "lower", "upper"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "point" ? "both bounds at one (sigma, P, R)"
                                                                       : std::string(name) + " bound at one point");
    sub->add_option("--sigma", cfg.sigma, "host standard deviation")->capture_default_str();
    sub->add_option("--power", cfg.power, "power budget P")->required();
    sub->add_option("--rate", cfg.rate, "message rate R in bits")->capture_default_str();
    if (std::string(name) != "upper") add_bound_flag(sub, cfg);
    common(sub);
  }

  auto* cap = app.add_subcommand("capacity", "perfect-recovery capacity C(P) and the alpha=1 rate");
  cap->add_option("--sigma", cfg.sigma)->capture_default_str();
  auto* single_power = cap->add_option("--power", cfg.power, "single power");
  for (auto* o : {cap->add_option("--pmin", raw.pmin), cap->add_option("--pmax", raw.pmax),
                  cap->add_option("--n", raw.n)})
    o->excludes(single_power);
  common(cap);

  auto* cost = app.add_subcommand("cost-ratio", "weighted-cost bound ratio over (k, sigma)");
  add_bound_flag(cost, cfg);
  cost->add_option("--kmin", raw.kmin);
  cost->add_option("--kmax", raw.kmax);
  cost->add_option("--smin", raw.smin);
  cost->add_option("--smax", raw.smax);
  cost->add_option("--ns", raw.ns, "sigma points (default: --n)");
  cost->add_option("--n", raw.n, "points per axis (log-spaced)");
  common(cost);

  auto* mmse = app.add_subcommand("mmse-ratio", "MMSE bound ratio over (P, sigma)");
  add_bound_flag(mmse, cfg);
  mmse->add_option("--rate", cfg.rate)->capture_default_str();
  mmse->add_option("--pmin", raw.pmin);
  mmse->add_option("--pmax", raw.pmax);
  mmse->add_option("--smin", raw.smin);
  mmse->add_option("--smax", raw.smax);
  mmse->add_option("--ns", raw.ns, "sigma points (default: --n)");
  mmse->add_option("--n", raw.n, "points per axis (log-spaced)");
  common(mmse);

  auto* pow = app.add_subcommand("power-ratio", "power bound ratio over (distortion fraction, sigma)");
  add_bound_flag(pow, cfg);
  pow->add_option("--rate", cfg.rate)->capture_default_str();
  pow->add_option("--fmin", raw.fmin, "smallest target as a fraction of sigma^2/(sigma^2+1)");
  pow->add_option("--fmax", raw.fmax);
  pow->add_option("--smin", raw.smin);
  pow->add_option("--smax", raw.smax);
  pow->add_option("--ns", raw.ns, "sigma points (default: --n)");
  pow->add_option("--n", raw.n, "points per axis (fractions linear, sigma log-spaced)");
  common(pow);

  auto* rs = app.add_subcommand("rate-sweep", "both bounds versus rate at fixed (sigma, P)");
  rs->add_option("--sigma", cfg.sigma)->capture_default_str();
  rs->add_option("--power", cfg.power)->required();
  rs->add_option("--rmin", raw.rmin);
  rs->add_option("--rmax", raw.rmax, "default 0.5 log2(1 + P)");
  rs->add_option("--n", raw.n, "rates, linearly spaced");
  common(rs);

  auto* val = app.add_subcommand("validate", "run the oracle and invariant checks");
  val->add_option("--seed", cfg.seed, "seed for random test points and Monte Carlo")->required();
  val->add_option("--samples", cfg.samples, "Monte Carlo samples per point")->capture_default_str();
  common(val);

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.argv = echo_argv(argc, argv);

  const std::string& sc = cfg.subcommand;
  if (sc == "cost-ratio") {
    cfg.k = resolve(raw.kmin, raw.kmax, raw.n, {1e-2, 1e2, 81, true});
    cfg.s = resolve(raw.smin, raw.smax, raw.ns ? raw.ns : raw.n, {1e-2, 1e2, 81, true});
  } else if (sc == "mmse-ratio") {
    cfg.p = resolve(raw.pmin, raw.pmax, raw.n, {1e-2, 10.0, 61, true});
    cfg.s = resolve(raw.smin, raw.smax, raw.ns ? raw.ns : raw.n, {0.1, 10.0, 61, true});
  } else if (sc == "power-ratio") {
    cfg.f = resolve(raw.fmin, raw.fmax, raw.n, {0.05, 0.95, 19, false});
    cfg.s = resolve(raw.smin, raw.smax, raw.ns ? raw.ns : raw.n, {0.1, 10.0, 19, true});
  } else if (sc == "capacity") {
    if (!cfg.power && !raw.pmin && !raw.pmax && !raw.n) cfg.power = 1.0;
    cfg.p = resolve(raw.pmin, raw.pmax, raw.n, {0.1, 10.0, 21, true});
  } else if (sc == "rate-sweep") {
    const double top = std::isfinite(*cfg.power) && *cfg.power >= 0.0 ? max_rate_for_power(*cfg.power) : 0.0;
    cfg.r = resolve(raw.rmin, raw.rmax, raw.n, {0.0, top, 21, false});
  }
  return cfg;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse(argc, argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kExitOk;
    }
    err << "ebound: " << e.what() << "\n(run 'ebound --help' for usage)\n";
    return kExitUsage;
  }

  set_num_threads(cfg.threads);

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::out | std::ios::trunc);
    if (!file) {
      err << "ebound: cannot open output file '" << cfg.output << "'\n";
      return kExitUsage;
    }
  }
  std::ostream& sink = cfg.output.empty() ? out : file;

  try {
    if (cfg.subcommand == "validate") {
      std::ostringstream report;
      const bool ok = run_validation(cfg, report);
      sink << report.str();
      return ok ? kExitOk : kExitValidation;
    }
    SweepTable table = compute_table(cfg);
    std::vector<std::pair<std::string, std::string>> meta{
        {"version", EBOUND_VERSION}, {"argv", join(cfg.argv)}, {"seed", cfg.seed ? std::to_string(*cfg.seed) : "none"}};
    meta.insert(meta.end(), table.metadata.begin(), table.metadata.end());
    table.metadata = std::move(meta);
    std::ostringstream csv;
    write_csv(csv, table);
    sink << csv.str();
  } catch (const DomainError& e) {
    err << "ebound: invalid parameters: " << e.what() << '\n';
    return kExitValidation;
  } catch (const FeasibilityError& e) {
    err << "ebound: infeasible: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DegenerateError& e) {
    err << "ebound: degenerate strategy: " << e.what() << '\n';
    return kExitValidation;
  }
  sink.flush();
  if (!sink) {
    err << "ebound: write failed\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace ebound::cli
