#pragma once

// OpenMP loop helper for the independent per-item kernels (bracket tables,
// per-binding checks).  Each kernel also has a serial reference version used
// by the tests and the benchmark.

#include <cstddef>
#include <exception>
#include <mutex>

namespace gcdeform {

/// Runs body(k) for k in [0, n) across OpenMP threads.  The first exception
/// thrown by any iteration is rethrown after the loop.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < count; ++k) {
    try {
      body(static_cast<std::size_t>(k));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Number of OpenMP worker threads available (1 without OpenMP).
int worker_threads();

}  // namespace gcdeform
