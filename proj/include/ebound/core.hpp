#pragma once

// Domain types and feasibility logic shared by every bound.
//
// All quantities use noise-normalized units: the channel noise variance is 1.
// A channel with noise variance N is handled by the caller through the
// rescaling sigma -> sigma / sqrt(N), power -> power / N; distortions returned
// by the library must then be multiplied by N.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace ebound {

/// Invalid argument: out-of-range or non-finite input.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Reliable communication at the requested rate is impossible with the given power.
class FeasibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The requested strategy is degenerate (no DPC power, singular covariance).
class DegenerateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point of every bound: host standard deviation, power budget and
/// message rate in bits per channel use.
struct ProblemParams {
  double sigma = 1.0;
  double power = 0.0;
  double rate = 0.0;
};

/// Throws DomainError unless sigma > 0, power >= 0, rate >= 0, all finite.
void validate(const ProblemParams& params);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double x, double tol = 0.0) const { return x >= lo - tol && x <= hi + tol; }
};

/// A bound value with the internal optimizers that produced it.
///
/// Lower bounds fill sigma_su_star and gamma_star; upper bounds fill
/// alpha_star/beta_star and report the host/input correlation -beta*sigma^2
/// of the linear part as sigma_su_star.
struct BoundResult {
  double value = 0.0;
  double sigma_su_star = 0.0;
  std::optional<double> gamma_star;
  std::optional<double> alpha_star;
  std::optional<double> beta_star;

  bool operator==(const BoundResult&) const = default;
};

inline double positive_part(double x) { return x > 0.0 ? x : 0.0; }

/// Minimum power at which rate R is achievable: 2^{2R} - 1.
inline double min_power_for_rate(double rate) { return std::exp2(2.0 * rate) - 1.0; }

/// Largest rate supported by power P over the unit-noise channel: 0.5 log2(1 + P).
inline double max_rate_for_power(double power) { return 0.5 * std::log2(1.0 + power); }

/// Zero-power distortion sigma^2 / (sigma^2 + 1): estimate S from S + Z.
inline double zero_power_mmse(double sigma) {
  const double s2 = sigma * sigma;
  return s2 / (s2 + 1.0);
}

/// True iff P >= 2^{2R} - 1 (boundary included).
bool feasible(const ProblemParams& params);

/// Throws FeasibilityError when !feasible(params).
void require_feasible(const ProblemParams& params);

/// Admissible correlations E[SU]:
/// [max(-sigma sqrt(P), (2^{2R} - 1 - P - sigma^2) / 2), sigma sqrt(P)].
Interval sigma_su_range(const ProblemParams& params);

std::string describe(const ProblemParams& params);

}  // namespace ebound
