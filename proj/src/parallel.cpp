#include "greedyseq/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace greedyseq {

int worker_count() {
    int hw = int(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("GREEDYSEQ_THREADS")) {
        try {
            int cap = std::stoi(env);
            if (cap >= 1) hw = std::min(hw, cap);
        } catch (...) {
            // ignore unparseable values
        }
    }
    return hw;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(int, std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    int workers = worker_count();
    std::size_t min_chunk = 4096; // below this, threading overhead dominates
    std::size_t chunks = std::min<std::size_t>(std::size_t(workers), (n + min_chunk - 1) / min_chunk);
    if (chunks <= 1) {
        fn(0, 0, n);
        return;
    }
    std::size_t per = (n + chunks - 1) / chunks;
    std::vector<std::thread> pool;
    pool.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t lo = c * per;
        std::size_t hi = std::min(n, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&fn, c, lo, hi] { fn(int(c), lo, hi); });
    }
    for (auto& t : pool) t.join();
}

} // namespace greedyseq
