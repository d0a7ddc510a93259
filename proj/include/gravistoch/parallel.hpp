#pragma once
#include <cstddef>
#include <functional>

namespace gravistoch {

// Worker cap: GRAVISTOCH_THREADS when set (clamped to >= 1), else the
// hardware concurrency.
int worker_count();

// Run fn(i) for i in [0, count) on up to `threads` workers. Items must be
// independent; the first exception thrown by any worker is rethrown here.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace gravistoch
