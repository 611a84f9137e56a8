#pragma once

// Index-parallel loop used for time sweeps and k-grids. Work item i always
// writes slot i, so results never depend on the thread count.

#include <cstddef>
#include <exception>
#include <functional>

namespace tfse {

/// Thread cap from TFSE_THREADS (0 or unset = hardware concurrency).
/// Throws ConfigError for a malformed value.
unsigned thread_count();

/// Runs fn(i) for i in [0, n). The first exception (lowest index) is
/// rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace tfse
