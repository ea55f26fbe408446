#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace dirichlet::par {

// Global worker cap. 0 means hardware concurrency.
int max_threads();
void set_max_threads(int n);

// Splits [0, n) into chunks of size `chunk` and runs body(chunk_index, begin, end)
// across workers. Chunk indexing is fixed by (n, chunk) alone, so any
// per-chunk accumulation keyed by chunk_index is independent of the worker
// count. Exceptions from the body are rethrown on the calling thread.
void for_chunks(uint64_t n, uint64_t chunk,
                const std::function<void(uint64_t, uint64_t, uint64_t)>& body);

// Convenience: parallel loop over [0, count) of independent tasks.
void for_each_index(uint64_t count, const std::function<void(uint64_t)>& body);

} // namespace dirichlet::par
