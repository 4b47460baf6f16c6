#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace rainbow {

// Runs fn(block) for every block in [0, nblocks). Workers pull blocks from a
// shared counter; with threads <= 1 this degenerates to a plain loop so
// single-threaded runs never spawn. Callers own any per-block result slots and
// merge them deterministically afterwards.
inline void run_blocks(std::size_t nblocks, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || nblocks <= 1) {
        for (std::size_t b = 0; b < nblocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            fn(b);
        }
    };
    unsigned nworkers = threads < nblocks ? threads : static_cast<unsigned>(nblocks);
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    for (unsigned i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// Worker count resolution: RAINBOW_THREADS wins over the requested value.
unsigned resolve_threads(unsigned requested);

}  // namespace rainbow
