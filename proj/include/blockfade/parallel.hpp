#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>

namespace blockfade {

enum class Execution { Serial, Parallel };

// Runs f(i) for i in [0, n). Exceptions from workers are rethrown on the caller.
template <class F>
void for_each_index(std::size_t n, Execution ex, F&& f) {
  if (ex == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// fixed-shape binary tree, so the result does not depend on thread count
double pairwise_sum(std::span<const double> v);

}  // namespace blockfade
