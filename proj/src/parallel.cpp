#include "bipot/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bipot
{

namespace
{
std::atomic<std::size_t> g_workers{1};
}

std::size_t worker_count()
{
    return g_workers.load();
}

void set_worker_count(std::size_t n)
{
    g_workers.store(std::max<std::size_t>(1, n));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body)
{
    const std::size_t w = std::min(worker_count(), n);
    if (w <= 1) {
        if (n > 0)
            body(0, n);
        return;
    }
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    const std::size_t chunk = (n + w - 1) / w;
    for (std::size_t t = 0; t < w; ++t) {
        const std::size_t b = t * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b >= e)
            break;
        threads.emplace_back([&, b, e] {
            try {
                body(b, e);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        });
    }
    for (auto& th : threads)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

}  // namespace bipot
