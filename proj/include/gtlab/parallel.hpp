#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <string_view>
#include <vector>

#include <omp.h>

namespace gtlab {

/// Execution policy for the task-parallel kernels.
///
/// Every kernel that fans out over independent tasks (Monte Carlo samples,
/// search restarts, grid cells) takes an Exec. `serial` is the reference
/// implementation kept for testing; `parallel` distributes the same tasks
/// over OpenMP threads. Both write each task's result into its own slot and
/// reduce in index order afterwards, so the two policies are bit-identical.
enum class Exec { serial, parallel };

inline std::string_view to_string(Exec exec) {
  return exec == Exec::serial ? "serial" : "parallel";
}

inline int worker_count() { return omp_get_max_threads(); }

/// Runs body(i) for i in [0, count). Exceptions thrown by any task are
/// rethrown on the calling thread (the first one recorded wins).
template <class Body>
void for_each_index(std::size_t count, Exec exec, Body&& body) {
  if (exec == Exec::serial || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

/// Maps f over [0, count) into a vector, preserving index order.
template <class T, class F>
std::vector<T> map_indices(std::size_t count, Exec exec, F&& f) {
  std::vector<T> out(count);
  for_each_index(count, exec, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace gtlab
