#pragma once

#include <cstddef>
#include <functional>

namespace swept {

// Worker threads to use: SWEPT_THREADS if set to a positive integer,
// otherwise the hardware concurrency.
std::size_t worker_count();

// Splits [0, n) into contiguous chunks, one per worker. Each index is visited
// exactly once, so writes to per-index slots stay deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t begin, std::size_t end)>& body);

}  // namespace swept
