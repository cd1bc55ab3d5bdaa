// Shared search configuration: enumeration budgets, worker counts, and the
// deterministic parallel task runner used by every exhaustive search.
#ifndef CSR_SEARCH_HPP
#define CSR_SEARCH_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace csr {

struct SearchOptions {
    /// Maximum number of enumerated states (tuples, patterns, extension
    /// vectors or samples). A search either answers exactly or refuses;
    /// nothing is silently truncated.
    std::uint64_t budget = 100'000'000;
    /// Worker threads; 0 means default_thread_count().
    int threads = 0;
};

/// Thrown when a search would enumerate more states than the budget allows.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget);

    std::uint64_t required() const { return required_; }
    std::uint64_t budget() const { return budget_; }

private:
    std::uint64_t required_;
    std::uint64_t budget_;
};

/// CSR_THREADS environment variable if set, else hardware concurrency, at least 1.
int default_thread_count();

int resolve_threads(const SearchOptions& options);

/// Runs fn(task) for every task in [0, task_count). Tasks are claimed from a
/// shared counter, so fn must only touch task-indexed or thread-local state.
/// Results must be merged by the caller in task order (or with an associative
/// total-order reduction) to stay independent of the schedule.
void parallel_tasks(std::uint64_t task_count, int threads,
                    const std::function<void(std::uint64_t)>& fn);

/// base^exp saturating at 2^64-1; used for budget checks on counted spaces.
std::uint64_t saturating_pow(std::uint64_t base, unsigned exp);

/// Binomial coefficient saturating at 2^64-1.
std::uint64_t saturating_binomial(std::uint64_t n, std::uint64_t k);

/// a*b saturating at 2^64-1.
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

} // namespace csr

#endif
