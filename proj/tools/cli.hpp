#pragma once

// Command-line front end. run() is the whole program minus process setup, so
// tests can drive it with an argv array and string streams.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebound/search.hpp"
#include "ebound/witsenhausen.hpp"

namespace ebound::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // bad flags, unwritable output
inline constexpr int kExitValidation = 2;  // rejected parameters, failed checks

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  int n = 1;
  bool log = true;

  std::vector<double> values() const;
};

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> argv;  // echoed into metadata, --threads removed

  double sigma = 1.0;
  std::optional<double> power;
  double rate = 0.0;
  LowerBoundKind bound = LowerBoundKind::kNew;

  GridSpec k{1e-2, 1e2, 81, true};
  GridSpec s{1e-2, 1e2, 81, true};
  GridSpec p{1e-2, 10.0, 61, true};
  GridSpec r{0.0, 0.0, 21, false};
  GridSpec f{0.05, 0.95, 19, false};

  std::optional<std::uint64_t> seed;
  std::uint64_t samples = 100'000;  // validate: Monte Carlo samples per point
  int threads = 1;
  std::string output;  // empty: stdout

  SearchConfigs search;
};

/// Carries the rendered help text for -h / --help.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses argv (argv[0] is the program name). Throws CLI::ParseError on
/// usage errors and HelpRequested for -h / --help.
RunConfig parse(int argc, const char* const* argv);

/// Runs the validation suite, one line per check on out. Returns true when
/// every check passed.
bool run_validation(const RunConfig& cfg, std::ostream& out);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ebound::cli
