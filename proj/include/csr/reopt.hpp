// Reoptimization under pattern-length growth: the EXTEND and K-EXTEND
// searches over occurrence extension vectors, the min-combiner, and the
// predicate for when reoptimization beats a plain sigma-approximation.
#ifndef CSR_REOPT_HPP
#define CSR_REOPT_HPP

#include "csr/core.hpp"
#include "csr/search.hpp"

#include <optional>
#include <span>

namespace csr {

/// An instance plus a pattern assumed optimal at its own length, and the
/// length delta k to reoptimize for. Immutable once built via make().
struct ReoptInput {
    Instance instance;
    std::string given_pattern;
    std::vector<Occurrence> given_occurrences;
    int k = 1;
    bool optimality_certified = false;

    int l() const { return static_cast<int>(given_pattern.size()); }

    /// Validates l + k <= n and materializes occurrences (leftmost minimal
    /// per sequence) when none are supplied. k = 0 is accepted at the type
    /// level (it makes flanking_windows degenerate); the extension searches
    /// themselves require k >= 1.
    static ReoptInput make(Instance instance, std::string given_pattern, int k,
                           std::optional<std::vector<Occurrence>> given_occurrences = {},
                           bool optimality_certified = false);
};

/// Feasible left-extension counts [lo, hi] for one occurrence: window
/// [start-x, start-x+l+k) must stay inside the sequence. Non-empty whenever
/// l + k <= n.
std::pair<int, int> extension_range(const Occurrence& occurrence, int k, int n);

/// One-column extension search (k = 1): every left/right extension vector of
/// the given occurrences, scoring the consensus of each extended tuple
/// against that tuple. Returns the minimum under the usual total order.
Solution extend(const ReoptInput& input, const SearchOptions& options = {});

/// General k-column extension search over all (k+1)^t split vectors
/// (boundary-clamped). With k = 1 the output is bit-identical to extend().
Solution k_extend(const ReoptInput& input, const SearchOptions& options = {});

/// Minimum-cost candidate; ties by pattern then occurrence starts.
/// All candidates must target the same instance and length.
Solution best_of(std::span<const Solution> candidates, const Alphabet& alphabet);

/// True when (t-1) < (sigma-1) * opt_cost, i.e. the extension search is
/// predicted to beat a plain sigma-approximation run from scratch.
bool advantage_predicate(int t, double sigma, long long opt_cost);

} // namespace csr

#endif
