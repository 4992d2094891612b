#pragma once

#include <cstddef>
#include <functional>

namespace qmc {

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Each item writes
// only its own output slot, so placement stays deterministic regardless of
// scheduling. jobs <= 1 runs inline. The first exception thrown by any item
// is rethrown on the calling thread.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn);

// Default worker count for campaign-style workloads.
int default_jobs();

}  // namespace qmc
