#pragma once

#include <cstddef>
#include <functional>

namespace hatlab {

/// Worker count from HATLAB_THREADS, default 1.
unsigned default_threads();

/// Splits [0, count) into `threads` contiguous chunks and runs
/// body(begin, end, worker) on each.  Chunk boundaries depend only on
/// (count, threads); callers reduce per-worker results in worker order.
void parallel_chunks(std::size_t count, unsigned threads,
                     const std::function<void(std::size_t, std::size_t, unsigned)> & body);

} // namespace hatlab
