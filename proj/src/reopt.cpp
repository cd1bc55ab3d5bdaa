#include "csr/reopt.hpp"

#include <algorithm>
#include <stdexcept>

namespace csr {

ReoptInput ReoptInput::make(Instance instance, std::string given_pattern, int k,
                            std::optional<std::vector<Occurrence>> given_occurrences,
                            bool optimality_certified) {
    const int l = static_cast<int>(given_pattern.size());
    if (l < 1 || l > instance.n()) {
        throw std::invalid_argument("reopt: given pattern length must be in [1, n]");
    }
    if (k < 0) {
        throw std::invalid_argument("reopt: k must be non-negative");
    }
    if (l + k > instance.n()) {
        throw std::invalid_argument("reopt: l + k must be <= n");
    }
    std::vector<Occurrence> occurrences;
    if (given_occurrences) {
        if (given_occurrences->size() != static_cast<std::size_t>(instance.t())) {
            throw std::invalid_argument("reopt: need one occurrence per sequence");
        }
        for (int i = 0; i < instance.t(); ++i) {
            const Occurrence& occ = (*given_occurrences)[static_cast<std::size_t>(i)];
            if (occ.seq_index != i || occ.length != l || occ.start < 0 ||
                occ.start + l > instance.n()) {
                throw std::invalid_argument("reopt: invalid given occurrence");
            }
        }
        occurrences = std::move(*given_occurrences);
    } else {
        occurrences.reserve(static_cast<std::size_t>(instance.t()));
        for (int i = 0; i < instance.t(); ++i) {
            occurrences.push_back(best_occurrence(given_pattern, i, instance).occurrence);
        }
    }
    return ReoptInput{std::move(instance), std::move(given_pattern), std::move(occurrences), k,
                      optimality_certified};
}

std::pair<int, int> extension_range(const Occurrence& occurrence, int k, int n) {
    const int lo = std::max(0, occurrence.start + occurrence.length + k - n);
    const int hi = std::min(k, occurrence.start);
    return {lo, hi};
}

namespace {

// Shared enumeration for extend / k_extend: all clamped extension vectors,
// consensus of each extended tuple, deterministic min.
Solution extension_search(const ReoptInput& input, const SearchOptions& options) {
    const Instance& instance = input.instance;
    const Alphabet& alphabet = instance.alphabet();
    const int t = instance.t();
    const int k = input.k;
    const int len = input.l() + k;

    std::vector<std::pair<int, int>> ranges;
    ranges.reserve(static_cast<std::size_t>(t));
    std::uint64_t total = 1;
    for (const Occurrence& occ : input.given_occurrences) {
        auto range = extension_range(occ, k, instance.n());
        total = saturating_mul(total, static_cast<std::uint64_t>(range.second - range.first + 1));
        ranges.push_back(range);
    }
    if (total > options.budget) {
        throw BudgetExceeded("extension search refused", total, options.budget);
    }

    const int first_width = ranges[0].second - ranges[0].first + 1;
    struct Candidate {
        long long cost = -1;
        std::string pattern;
        std::vector<int> starts;
    };
    std::vector<Candidate> task_best(static_cast<std::size_t>(first_width));
    parallel_tasks(static_cast<std::uint64_t>(first_width), resolve_threads(options),
                   [&](std::uint64_t task) {
        Candidate best;
        std::vector<int> shifts(static_cast<std::size_t>(t));
        for (int i = 0; i < t; ++i) {
            shifts[static_cast<std::size_t>(i)] = ranges[static_cast<std::size_t>(i)].first;
        }
        shifts[0] = ranges[0].first + static_cast<int>(task);
        std::vector<std::string_view> tuple(static_cast<std::size_t>(t));
        std::vector<int> starts(static_cast<std::size_t>(t));
        std::string cons;
        for (;;) {
            for (int i = 0; i < t; ++i) {
                const int start = input.given_occurrences[static_cast<std::size_t>(i)].start -
                                  shifts[static_cast<std::size_t>(i)];
                starts[static_cast<std::size_t>(i)] = start;
                tuple[static_cast<std::size_t>(i)] = instance.window(i, start, len);
            }
            consensus_into(tuple, alphabet, cons);
            long long cost = 0;
            for (int i = 0; i < t; ++i) {
                cost += hamming(cons, tuple[static_cast<std::size_t>(i)]);
            }
            if (best.cost < 0 || cost < best.cost ||
                (cost == best.cost &&
                 (pattern_less(cons, best.pattern, alphabet) ||
                  (cons == best.pattern && starts < best.starts)))) {
                best.cost = cost;
                best.pattern = cons;
                best.starts = starts;
            }
            int i = t - 1;
            while (i >= 1) {
                auto& range = ranges[static_cast<std::size_t>(i)];
                if (++shifts[static_cast<std::size_t>(i)] <= range.second) {
                    break;
                }
                shifts[static_cast<std::size_t>(i)] = range.first;
                --i;
            }
            if (i == 0) {
                break;
            }
        }
        task_best[task] = std::move(best);
    });

    Candidate best;
    for (Candidate& c : task_best) {
        if (c.cost < 0) {
            continue;
        }
        if (best.cost < 0 || c.cost < best.cost ||
            (c.cost == best.cost &&
             (pattern_less(c.pattern, best.pattern, alphabet) ||
              (c.pattern == best.pattern && c.starts < best.starts)))) {
            best = std::move(c);
        }
    }
    Solution sol;
    sol.pattern = best.pattern;
    sol.cost = best.cost;
    sol.occurrences.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        sol.occurrences.push_back(Occurrence{i, best.starts[static_cast<std::size_t>(i)], len});
    }
    return sol;
}

} // namespace

Solution extend(const ReoptInput& input, const SearchOptions& options) {
    if (input.k != 1) {
        throw std::invalid_argument("extend requires k == 1; use k_extend");
    }
    return extension_search(input, options);
}

Solution k_extend(const ReoptInput& input, const SearchOptions& options) {
    if (input.k < 1) {
        throw std::invalid_argument("k_extend requires k >= 1");
    }
    return extension_search(input, options);
}

Solution best_of(std::span<const Solution> candidates, const Alphabet& alphabet) {
    if (candidates.empty()) {
        throw std::invalid_argument("best_of: no candidates");
    }
    const Solution* best = &candidates[0];
    for (const Solution& c : candidates.subspan(1)) {
        if (solution_less(c, *best, alphabet)) {
            best = &c;
        }
    }
    return *best;
}

bool advantage_predicate(int t, double sigma, long long opt_cost) {
    if (sigma < 1.0) {
        throw std::invalid_argument("advantage_predicate: sigma must be >= 1");
    }
    return static_cast<double>(t - 1) < (sigma - 1.0) * static_cast<double>(opt_cost);
}

} // namespace csr
