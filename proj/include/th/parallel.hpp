#pragma once

#include <cstdint>
#include <functional>

namespace th {

// Number of worker threads used by parallel_for. Reads the
// TORUS_HARMONICS_THREADS environment variable once (values < 1 are
// treated as 1); defaults to the hardware concurrency.
int worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous blocks, one
// per worker. fn must be safe to call concurrently for distinct i; callers
// get deterministic results by writing to disjoint, pre-sized slots.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace th
