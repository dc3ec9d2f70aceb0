#pragma once

#include <cstddef>
#include <functional>

namespace cylpeak {

// Worker count: CYLPEAK_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

// Runs body(i) for i in [0, n) over worker_count() threads in contiguous chunks.
// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace cylpeak
