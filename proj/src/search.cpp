#include "ebound/search.hpp"

#include <algorithm>
#include <stdexcept>

namespace ebound {

std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("linspace: n must be >= 1");
  if (n == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(n));
  const double step = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + step * i;
  v.back() = hi;
  return v;
}

std::vector<double> logspace(double log_lo, double log_hi, int n) {
  auto v = linspace(log_lo, log_hi, n);
  for (double& x : v) x = std::pow(10.0, x);
  return v;
}

}  // namespace ebound
