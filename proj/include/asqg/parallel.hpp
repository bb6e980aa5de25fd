#pragma once

#include <cstddef>
#include <functional>

namespace asqg {

/// Worker count used when a caller passes 0: CDE_THREADS if set, else the
/// hardware concurrency.
int default_threads();

/// Runs body(i) for i in [0, n) on a static contiguous partition. Each index
/// is processed by exactly one worker, so per-index results do not depend on
/// the worker count. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace asqg
