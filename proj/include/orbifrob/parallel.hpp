#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <optional>
#include <vector>

#include <omp.h>

namespace orbifrob {

/// Reference: results[i] = f(i), in index order.
template <class T, class F>
std::vector<T> serial_map(std::size_t count, F&& f) {
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(f(i));
  return out;
}

/// Same result as serial_map, evaluated on `jobs` OpenMP threads. Each index
/// writes only its own slot, so the output never depends on scheduling. The
/// lowest-index exception (if any) is rethrown after the loop.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, int jobs, F&& f) {
  if (jobs <= 1 || count < 2) return serial_map<T>(count, f);
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  const long n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
  for (long i = 0; i < n; ++i) {
    try {
      slots[i].emplace(f(static_cast<std::size_t>(i)));
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<T> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Smallest index i with f(i) engaged, scanning in blocks so a failing
/// check stops early. f returns std::optional<W>.
template <class W, class F>
std::optional<W> first_failure(std::size_t count, int jobs, F&& f, std::size_t block = 2048) {
  for (std::size_t lo = 0; lo < count; lo += block) {
    const std::size_t hi = std::min(count, lo + block);
    auto res = parallel_map<std::optional<W>>(hi - lo, jobs, [&](std::size_t k) { return f(lo + k); });
    for (auto& r : res)
      if (r) return r;
  }
  return std::nullopt;
}

}  // namespace orbifrob
