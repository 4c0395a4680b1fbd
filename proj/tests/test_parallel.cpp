#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "ebound/parallel.hpp"
#include "ebound/search.hpp"
#include "ebound/witsenhausen.hpp"

using namespace ebound;

namespace {
struct Threads {
  explicit Threads(int n) : saved(num_threads()) { set_num_threads(n); }
  ~Threads() { set_num_threads(saved); }
  int saved;
};
}  // namespace

TEST_SUITE("parallel") {

TEST_CASE("every index runs once and the lowest failing index wins") {
  Threads t(4);
  std::vector<int> hits(1000, 0);
  for_each_index(hits.size(), Exec::kParallel, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::count(hits.begin(), hits.end(), 1) == 1000);

  for (Exec e : {Exec::kSerial, Exec::kParallel}) {
    try {
      for_each_index(100, e, [](std::size_t i) {
        if (i % 7 == 3) throw std::runtime_error(std::to_string(i));
      });
      FAIL("no exception");
    } catch (const std::runtime_error& err) {
      CHECK(std::string(err.what()) == "3");
    }
  }
}

TEST_CASE("thread count from the environment") {
  setenv("EBOUND_THREADS", "3", 1);
  CHECK(threads_from_env(1) == 3);
  setenv("EBOUND_THREADS", "zero", 1);
  CHECK(threads_from_env(2) == 2);
  setenv("EBOUND_THREADS", "0", 1);
  CHECK(threads_from_env(2) == 2);
  unsetenv("EBOUND_THREADS");
  CHECK(threads_from_env(5) == 5);
}

TEST_CASE("parallel surfaces equal the serial reference bit for bit") {
  Threads t(4);
  const std::vector<double> ks = logspace(-1, 1, 4), sigmas = logspace(-1, 1, 5), powers = logspace(-2, 1, 4);
  CHECK(cost_ratio_surface(ks, sigmas, LowerBoundKind::kNew, {}, {}, Exec::kSerial) ==
        cost_ratio_surface(ks, sigmas, LowerBoundKind::kNew, {}, {}, Exec::kParallel));
  CHECK(mmse_ratio_surface(powers, sigmas, 0.0, LowerBoundKind::kLegacy, {}, Exec::kSerial) ==
        mmse_ratio_surface(powers, sigmas, 0.0, LowerBoundKind::kLegacy, {}, Exec::kParallel));
  CHECK(power_ratio_surface({0.2, 0.6}, sigmas, 0.0, LowerBoundKind::kNew, {}, {}, Exec::kSerial) ==
        power_ratio_surface({0.2, 0.6}, sigmas, 0.0, LowerBoundKind::kNew, {}, {}, Exec::kParallel));
  const std::vector<double> rates = linspace(0.0, 0.5, 6);
  CHECK(mmse_vs_rate(1.0, 1.0, rates, {}, Exec::kSerial) == mmse_vs_rate(1.0, 1.0, rates, {}, Exec::kParallel));
}

TEST_CASE("Monte Carlo is independent of execution mode") {
  Threads t(3);
  const McEstimate a = mc_lmmse_check(1.0, 1.0, {0.6, 0.3}, {300'001, 17}, Exec::kSerial);
  const McEstimate b = mc_lmmse_check(1.0, 1.0, {0.6, 0.3}, {300'001, 17}, Exec::kParallel);
  CHECK(a.mmse == b.mmse);
  CHECK(a.std_error == b.std_error);
}

}
