// Spot values against 50-digit evaluations of the defining formulas.

#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "ebound/achievability.hpp"
#include "ebound/lower_bounds.hpp"

using namespace ebound;
using big = boost::multiprecision::cpp_bin_float_50;

namespace {
double rel(double got, const big& want) { return static_cast<double>(abs((big(got) - want) / want)); }


big lb_objective(const big& s2, const big& p, const big& su, const big& g) {
  const big first = sqrt(s2 / (1 + s2 + p + 2 * su));
  const big gap = first - sqrt((1 - g) * (1 - g) * s2 + g * g * p - 2 * g * (1 - g) * su);
  return gap > 0 ? gap * gap / (g * g) : big(0);
}
}  // namespace

TEST_SUITE("precision") {

TEST_CASE("lower-bound objective at (sigma 1, P 4, sigma_SU -1.9, gamma 0.7)") {
  // the second root dominates here, so the positive part is exactly zero
  CHECK(lb_objective(1, 4, big(-19) / 10, big(7) / 10) == 0);
  CHECK(lb_inner({1.0, 4.0, 0.0}, -1.9, 0.7) == 0.0);
}

TEST_CASE("lower-bound objective where it is positive") {
  const big want = lb_objective(1, big(4) / 100, big(-1) / 10, big(7) / 10);
  REQUIRE(want > 0);
  CHECK(rel(lb_inner({1.0, 0.04, 0.0}, -0.1, 0.7), want) < 1e-14);
  const big w2 = lb_objective(big(9) / 4, big(3) / 10, big(1) / 5, big(1) / 2);
  REQUIRE(w2 > 0);
  CHECK(rel(lb_inner({1.5, 0.3, 0.0}, 0.2, 0.5), w2) < 1e-14);
}

TEST_CASE("legacy bound at (sigma 10, P 0.04)") {
  const big s2 = 100, p = big(4) / 100;
  const big gap = sqrt(s2 / (s2 + p + 2 * 10 * sqrt(p) + 1)) - sqrt(p);
  CHECK(rel(old_lower_bound(10.0, 0.04), gap * gap) < 1e-14);
}

TEST_CASE("DPC rate at (sigma 1, P 1, alpha 0.5, beta 0.5)") {
  const big a = big(1) / 2, b = big(1) / 2;
  const big s = (1 - b) * (1 - b), p = 1 - b * b;
  const big want = log(p * (p + s + 1) / (p * s * (1 - a) * (1 - a) + p + a * a * s)) / (2 * log(big(2)));
  CHECK(rel(dpc_rate(1.0, 1.0, {0.5, 0.5}), want) < 1e-14);
}

TEST_CASE("LMMSE at (sigma 1, P 1, alpha 0.6, beta 0.3)") {
  const big a = big(6) / 10, b = big(3) / 10;
  const big s = (1 - b) * (1 - b), p = 1 - b * b;
  const big det = p * s * (1 - a) * (1 - a) + p + a * a * s;
  const big want = (s + p) - ((s + p) * (s + p) * (a * a * s + p) + (a * s + p) * (a * s + p) * (1 - s - p)) / det;
  CHECK(rel(lmmse_x(1.0, 1.0, {0.6, 0.3}), want) < 1e-13);
}

}
