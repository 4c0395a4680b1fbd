#pragma once

// Rectangular sweep results and their CSV form.
//
// File layout: '#'-prefixed metadata lines ("# key: value"), then the header
//   axis1,axis2,lower,upper,ratio,sigma_su_star,gamma_star,alpha_star,beta_star
// and one row per cell, axis1-major. Numbers are printed with 17 significant
// digits, unbounded ratios as "inf", and inapplicable fields are left empty.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ebound {

inline constexpr const char* kSweepHeader =
    "axis1,axis2,lower,upper,ratio,sigma_su_star,gamma_star,alpha_star,beta_star";

/// Values at or below this are treated as exact zeros when forming ratios.
inline constexpr double kRatioZeroFloor = 1e-20;

/// upper / lower with 0/0 -> 1 and positive/0 -> +inf.
double bound_ratio(double upper, double lower);

struct SweepRow {
  double axis1 = 0.0;
  double axis2 = 0.0;
  std::optional<double> lower;
  std::optional<double> upper;
  std::optional<double> ratio;
  std::optional<double> sigma_su_star;
  std::optional<double> gamma_star;
  std::optional<double> alpha_star;
  std::optional<double> beta_star;

  bool operator==(const SweepRow&) const = default;
};

struct SweepTable {
  std::string axis1_name = "axis1";
  std::string axis2_name = "axis2";
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<SweepRow> rows;  ///< rows[i1 * axis2.size() + i2]
  std::vector<std::pair<std::string, std::string>> metadata;

  /// Allocates rows for the full grid with the axis values filled in.
  static SweepTable grid(std::string axis1_name, std::vector<double> axis1, std::string axis2_name,
                         std::vector<double> axis2);

  SweepRow& at(std::size_t i1, std::size_t i2) { return rows[i1 * axis2.size() + i2]; }
  const SweepRow& at(std::size_t i1, std::size_t i2) const { return rows[i1 * axis2.size() + i2]; }

  /// Index of the largest finite ratio (first one on ties); empty if none.
  std::optional<std::size_t> argmax_finite_ratio() const;
  double max_finite_ratio() const;
  std::size_t count_infinite_ratios() const;

  bool operator==(const SweepTable&) const = default;
};

/// Shortest decimal with 17 significant digits; "inf" / "-inf" for infinities.
std::string format_number(double x);

void write_csv(std::ostream& out, const SweepTable& table);

/// Parses write_csv output. Axis grids are rebuilt from the distinct row
/// values in order of first appearance. Throws std::runtime_error on schema errors.
SweepTable read_csv(std::istream& in);

}  // namespace ebound
