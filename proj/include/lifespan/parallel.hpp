#pragma once

#include <cstddef>
#include <functional>

namespace lifespan {

// Worker cap: hardware concurrency bounded by the LIFESPAN_THREADS
// environment variable (>= 1).
unsigned worker_count();

// Runs fn(i) for i in [0, n) on up to worker_count() threads with a static
// index partition. Callers keep determinism by writing to per-index slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace lifespan
