#include "dirichlet/parallel.hpp"

#include <exception>
#include <mutex>

namespace dirichlet::par {

namespace {
std::atomic<int> g_max_threads{0};

int effective_threads() {
    int cap = g_max_threads.load();
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (cap <= 0) return hw;
    return std::min(cap, hw);
}
} // namespace

int max_threads() { return effective_threads(); }

void set_max_threads(int n) { g_max_threads.store(n); }

void for_chunks(uint64_t n, uint64_t chunk,
                const std::function<void(uint64_t, uint64_t, uint64_t)>& body) {
    if (n == 0) return;
    if (chunk == 0) chunk = 1;
    const uint64_t n_chunks = (n + chunk - 1) / chunk;
    const int workers = static_cast<int>(
        std::min<uint64_t>(n_chunks, static_cast<uint64_t>(effective_threads())));

    if (workers <= 1) {
        for (uint64_t c = 0; c < n_chunks; ++c)
            body(c, c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }

    std::atomic<uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                body(c, c * chunk, std::min(n, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int i = 1; i < workers; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

void for_each_index(uint64_t count, const std::function<void(uint64_t)>& body) {
    for_chunks(count, 1, [&](uint64_t, uint64_t begin, uint64_t) { body(begin); });
}

} // namespace dirichlet::par
