#pragma once

#include <cstddef>
#include <functional>

namespace amgm {

/// Number of workers for a requested job count; 0 means hardware concurrency.
unsigned resolve_jobs(int requested);

/// Runs body(i) for i in [0, count) on up to `jobs` threads, handing out
/// indices through an atomic counter. Callers store results by index so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// body is rethrown after all workers stop.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body);

}  // namespace amgm
