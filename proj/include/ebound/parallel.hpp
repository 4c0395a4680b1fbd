#pragma once

// Index-parallel kernels. Every grid sweep in the library runs through
// for_each_index so the OpenMP path and the serial reference path execute the
// same per-index work; results are written by index, never accumulated in
// completion order, so both paths produce bit-identical output.

#include <cstddef>
#include <exception>
#include <mutex>

namespace ebound {

enum class Exec { kSerial, kParallel };

/// Sets the OpenMP worker count for subsequent parallel kernels (n >= 1).
void set_num_threads(int n);
int num_threads();

/// Reads EBOUND_THREADS; returns fallback when unset or invalid.
int threads_from_env(int fallback);

template <class Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
  if (exec == Exec::kSerial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  // Exceptions cannot cross the OpenMP region; keep the one from the lowest index.
  std::exception_ptr first_error;
  std::size_t first_index = n;
  std::mutex guard;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (static_cast<std::size_t>(i) < first_index) {
        first_index = static_cast<std::size_t>(i);
        first_error = std::current_exception();
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ebound
