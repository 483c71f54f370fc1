#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace greedyseq {

// Worker count: min(hardware_concurrency, GREEDYSEQ_THREADS if set). At least 1.
int worker_count();

// Runs fn(chunk_index, begin, end) over [0, n) split into contiguous chunks,
// one per worker. Chunk boundaries depend only on n and the worker count, and
// callers must combine per-chunk results in chunk order, so reductions are
// reproducible for any thread count.
void parallel_chunks(std::size_t n,
                     const std::function<void(int, std::size_t, std::size_t)>& fn);

} // namespace greedyseq
