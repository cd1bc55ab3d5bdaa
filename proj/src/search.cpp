#include "csr/search.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace csr {

BudgetExceeded::BudgetExceeded(const std::string& what, std::uint64_t required,
                               std::uint64_t budget)
    : std::runtime_error(what + " (requires " + std::to_string(required) +
                         " states, budget " + std::to_string(budget) + ")"),
      required_(required),
      budget_(budget) {}

int default_thread_count() {
    if (const char* env = std::getenv("CSR_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) {
            return static_cast<int>(v);
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

int resolve_threads(const SearchOptions& options) {
    return options.threads > 0 ? options.threads : default_thread_count();
}

void parallel_tasks(std::uint64_t task_count, int threads,
                    const std::function<void(std::uint64_t)>& fn) {
    if (task_count == 0) {
        return;
    }
    const std::uint64_t workers =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), task_count);
    if (workers <= 1) {
        for (std::uint64_t task = 0; task < task_count; ++task) {
            fn(task);
        }
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (;;) {
            std::uint64_t task = next.fetch_add(1, std::memory_order_relaxed);
            if (task >= task_count) {
                return;
            }
            try {
                fn(task);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(task_count, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (std::uint64_t w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) {
        return 0;
    }
    if (a > std::numeric_limits<std::uint64_t>::max() / b) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
    std::uint64_t result = 1;
    for (unsigned i = 0; i < exp; ++i) {
        result = saturating_mul(result, base);
        if (result == std::numeric_limits<std::uint64_t>::max()) {
            return result;
        }
    }
    return result;
}

std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // Each prefix equals C(n-k+i, i), so the division is exact and the
        // running value is non-decreasing; saturating early is safe.
        result = result * (n - k + i) / i;
        if (result > cap) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(result);
}

} // namespace csr
