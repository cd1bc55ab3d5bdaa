#include "csr/exact.hpp"

#include <stdexcept>

namespace csr {

namespace {

struct Candidate {
    long long cost = -1; // -1 = unset
    std::string pattern;
    std::vector<int> starts;
};

bool candidate_less(const Candidate& a, const Candidate& b, const Alphabet& alphabet) {
    if (b.cost < 0) {
        return a.cost >= 0;
    }
    if (a.cost < 0) {
        return false;
    }
    if (a.cost != b.cost) {
        return a.cost < b.cost;
    }
    if (a.pattern != b.pattern) {
        return pattern_less(a.pattern, b.pattern, alphabet);
    }
    return a.starts < b.starts;
}

void check_length(const Instance& instance, int length) {
    if (length < 1 || length > instance.n()) {
        throw std::invalid_argument("pattern length must be in [1, n]");
    }
}

} // namespace

Solution solve_alignment(const Instance& instance, int length, const SearchOptions& options) {
    check_length(instance, length);
    const int t = instance.t();
    const int width = instance.n() - length + 1;
    const std::uint64_t total =
        saturating_pow(static_cast<std::uint64_t>(width), static_cast<unsigned>(t));
    if (total > options.budget) {
        throw BudgetExceeded("alignment oracle refused", total, options.budget);
    }

    const Alphabet& alphabet = instance.alphabet();
    std::vector<Candidate> task_best(static_cast<std::size_t>(width));
    parallel_tasks(static_cast<std::uint64_t>(width), resolve_threads(options),
                   [&](std::uint64_t task) {
        Candidate best;
        std::vector<int> starts(static_cast<std::size_t>(t), 0);
        starts[0] = static_cast<int>(task);
        std::vector<std::string_view> tuple(static_cast<std::size_t>(t));
        std::string cons;
        for (;;) {
            for (int i = 0; i < t; ++i) {
                tuple[static_cast<std::size_t>(i)] =
                    instance.window(i, starts[static_cast<std::size_t>(i)], length);
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
                if (++starts[static_cast<std::size_t>(i)] < width) {
                    break;
                }
                starts[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i == 0) {
                break; // first digit is fixed per task
            }
        }
        task_best[task] = std::move(best);
    });

    Candidate best;
    for (const Candidate& c : task_best) {
        if (c.cost >= 0 && (best.cost < 0 || candidate_less(c, best, alphabet))) {
            best = c;
        }
    }
    Solution sol;
    sol.pattern = best.pattern;
    sol.cost = best.cost;
    sol.occurrences.reserve(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) {
        sol.occurrences.push_back(Occurrence{i, best.starts[static_cast<std::size_t>(i)], length});
    }
    return sol;
}

Solution solve_pattern(const Instance& instance, int length, const SearchOptions& options) {
    check_length(instance, length);
    const Alphabet& alphabet = instance.alphabet();
    const int sigma = alphabet.size();
    const std::uint64_t total =
        saturating_pow(static_cast<std::uint64_t>(sigma), static_cast<unsigned>(length));
    if (total > options.budget) {
        throw BudgetExceeded("pattern oracle refused", total, options.budget);
    }

    struct PatternBest {
        long long cost = -1;
        std::string pattern;
    };
    std::vector<PatternBest> task_best(static_cast<std::size_t>(sigma));
    parallel_tasks(static_cast<std::uint64_t>(sigma), resolve_threads(options),
                   [&](std::uint64_t task) {
        PatternBest best;
        std::vector<int> ranks(static_cast<std::size_t>(length), 0);
        ranks[0] = static_cast<int>(task);
        std::string pattern(static_cast<std::size_t>(length), '\0');
        for (;;) {
            for (int j = 0; j < length; ++j) {
                pattern[static_cast<std::size_t>(j)] =
                    alphabet.symbol(ranks[static_cast<std::size_t>(j)]);
            }
            long long cost = 0;
            for (int i = 0; i < instance.t(); ++i) {
                cost += best_occurrence(pattern, i, instance).distance;
            }
            // Enumeration is already in alphabet-lexicographic order, so a
            // strict improvement test keeps the smallest tied pattern.
            if (best.cost < 0 || cost < best.cost) {
                best.cost = cost;
                best.pattern = pattern;
            }
            int j = length - 1;
            while (j >= 1) {
                if (++ranks[static_cast<std::size_t>(j)] < sigma) {
                    break;
                }
                ranks[static_cast<std::size_t>(j)] = 0;
                --j;
            }
            if (j == 0) {
                break;
            }
        }
        task_best[task] = std::move(best);
    });

    PatternBest best;
    for (const PatternBest& c : task_best) { // rank order == lexicographic order
        if (c.cost >= 0 && (best.cost < 0 || c.cost < best.cost)) {
            best = c;
        }
    }
    return evaluate(best.pattern, instance);
}

Solution solve_exact(OracleKind kind, const Instance& instance, int length,
                     const SearchOptions& options) {
    return kind == OracleKind::alignment ? solve_alignment(instance, length, options)
                                         : solve_pattern(instance, length, options);
}

} // namespace csr
