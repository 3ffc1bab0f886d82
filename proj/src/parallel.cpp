#include "conjopt/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace conjopt {

int default_thread_count() {
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
    if (threads == 0) threads = default_thread_count();
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = w * chunk;
        std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &body]() {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace conjopt
