#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <type_traits>
#include <vector>

#include <omp.h>

namespace rearr {

enum class Execution { serial, parallel };

namespace batch {

/// Reference implementation: f(0), ..., f(n-1) in order.
template <class F>
auto map_serial(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  std::vector<std::invoke_result_t<F&, std::size_t>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
  return out;
}

/// Same results as map_serial, computed by an OpenMP team. Each index is
/// written to its own slot, so the output does not depend on scheduling. The
/// first exception (lowest index) is rethrown after the loop.
template <class F>
auto map_parallel(std::size_t n, F&& f) -> std::vector<std::invoke_result_t<F&, std::size_t>> {
  using R = std::invoke_result_t<F&, std::size_t>;
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      slots[static_cast<std::size_t>(i)].emplace(f(static_cast<std::size_t>(i)));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

template <class F>
auto map(Execution exec, std::size_t n, F&& f) {
  return exec == Execution::serial ? map_serial(n, std::forward<F>(f)) : map_parallel(n, std::forward<F>(f));
}

inline void set_threads(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

}  // namespace batch
}  // namespace rearr
