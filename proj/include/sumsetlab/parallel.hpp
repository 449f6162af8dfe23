#pragma once

#include <cstddef>
#include <functional>

namespace sumsetlab {

/// Worker count: SUMSETLAB_THREADS if set and positive, else hardware concurrency.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// handled exactly once; callers write results into per-index slots, so the
/// outcome does not depend on scheduling. The first exception is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace sumsetlab
