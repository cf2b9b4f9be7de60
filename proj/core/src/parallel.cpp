#include "germlab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace germlab {

std::size_t worker_count() {
    if (const char* env = std::getenv("GERMLAB_THREADS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end != env && n >= 1) return static_cast<std::size_t>(n > 256 ? 256 : n);
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t workers = worker_count();
    if (workers > count) workers = count;
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    const std::size_t block = (count / (workers * 8)) + 1;

    auto run = [&]() {
        for (;;) {
            std::size_t begin = next.fetch_add(block);
            if (begin >= count || failed.load(std::memory_order_relaxed)) return;
            std::size_t end = begin + block < count ? begin + block : count;
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace germlab
