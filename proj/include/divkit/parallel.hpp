#pragma once

#include <chrono>
#include <cstddef>
#include <functional>

namespace divkit {

/// Process-wide worker count used by row-parallel loops. Defaults to 1.
void set_num_threads(std::size_t n);
std::size_t num_threads() noexcept;

/// Calls body(begin, end) over a static partition of [0, count). Each index
/// is visited exactly once and the partition never changes per-index work,
/// so results are identical for any thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

/// Runs `f` and adds its wall-clock duration in milliseconds to `elapsed_ms`.
template <class F>
decltype(auto) timed(double& elapsed_ms, F&& f) {
  struct Guard {
    double& out;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Guard() {
      out += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
    }
  } guard{elapsed_ms};
  return std::forward<F>(f)();
}

}  // namespace divkit
