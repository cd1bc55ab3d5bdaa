#include "csr/ptas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace csr {

namespace {

void check_spec(const Instance& instance, const SampleSpec& spec) {
    if (spec.length < 1 || spec.length > instance.n()) {
        throw std::invalid_argument("sample length must be in [1, n]");
    }
    if (spec.r < 1) {
        throw std::invalid_argument("sample size r must be >= 1");
    }
    if (spec.mode == SampleMode::distinct_sequences && spec.r > instance.t()) {
        throw std::invalid_argument("sample size r must be <= t in distinct-sequences mode");
    }
}

void check_exclude(const Instance& instance, const SampleSpec& spec, const WindowSet& ws) {
    if (ws.start_intervals.size() != static_cast<std::size_t>(instance.t())) {
        throw std::invalid_argument("window set must cover every sequence");
    }
    if (ws.window_length != spec.length) {
        throw std::invalid_argument("window set length does not match sample length");
    }
}

int start_width(const Instance& instance, int length) {
    return instance.n() - length + 1;
}

// (seq, start) members in lexicographic sample order. Position j may use
// sequences up to t - (r - j) in distinct mode.
void first_members(std::vector<std::pair<int, int>>& m, const SampleSpec& spec) {
    m.resize(static_cast<std::size_t>(spec.r));
    for (int j = 0; j < spec.r; ++j) {
        m[static_cast<std::size_t>(j)] = {spec.mode == SampleMode::distinct_sequences ? j : 0, 0};
    }
}

bool advance_members(std::vector<std::pair<int, int>>& m, const SampleSpec& spec, int t, int W) {
    const int r = spec.r;
    int j = r - 1;
    if (spec.mode == SampleMode::distinct_sequences) {
        while (j >= 0) {
            auto& [seq, start] = m[static_cast<std::size_t>(j)];
            if (++start < W) {
                break;
            }
            start = 0;
            if (++seq <= t - (r - j)) {
                break;
            }
            --j;
        }
        if (j < 0) {
            return false;
        }
        for (int i = j + 1; i < r; ++i) {
            m[static_cast<std::size_t>(i)] = {m[static_cast<std::size_t>(i - 1)].first + 1, 0};
        }
        return true;
    }
    // multiset mode: non-decreasing tuples over linear positions seq*W+start
    while (j >= 0) {
        auto& [seq, start] = m[static_cast<std::size_t>(j)];
        if (++start < W) {
            break;
        }
        start = 0;
        if (++seq < t) {
            break;
        }
        --j;
    }
    if (j < 0) {
        return false;
    }
    for (int i = j + 1; i < r; ++i) {
        m[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(j)];
    }
    return true;
}

// Rank -> members, used to give parallel workers contiguous chunks of the
// lexicographic stream. Only called when the total count fits the budget, so
// every intermediate block count fits in 64 bits.
void unrank_members(std::uint64_t idx, std::vector<std::pair<int, int>>& m,
                    const SampleSpec& spec, int t, int W) {
    const int r = spec.r;
    m.resize(static_cast<std::size_t>(r));
    if (spec.mode == SampleMode::distinct_sequences) {
        int min_seq = 0;
        for (int remaining = r; remaining >= 1; --remaining) {
            bool placed = false;
            for (int s = min_seq; s <= t - remaining && !placed; ++s) {
                const std::uint64_t per_start =
                    saturating_mul(saturating_binomial(static_cast<std::uint64_t>(t - s - 1),
                                                       static_cast<std::uint64_t>(remaining - 1)),
                                   saturating_pow(static_cast<std::uint64_t>(W),
                                                  static_cast<unsigned>(remaining - 1)));
                const std::uint64_t seq_block =
                    saturating_mul(per_start, static_cast<std::uint64_t>(W));
                if (idx < seq_block) {
                    m[static_cast<std::size_t>(r - remaining)] = {
                        s, static_cast<int>(idx / per_start)};
                    idx %= per_start;
                    min_seq = s + 1;
                    placed = true;
                } else {
                    idx -= seq_block;
                }
            }
            if (!placed) {
                throw std::logic_error("sample rank out of range");
            }
        }
        return;
    }
    const int positions = t * W;
    int min_p = 0;
    for (int remaining = r; remaining >= 1; --remaining) {
        bool placed = false;
        for (int p = min_p; p < positions && !placed; ++p) {
            const std::uint64_t cnt = saturating_binomial(
                static_cast<std::uint64_t>(positions - p) + static_cast<std::uint64_t>(remaining) - 2,
                static_cast<std::uint64_t>(remaining - 1));
            if (idx < cnt) {
                m[static_cast<std::size_t>(r - remaining)] = {p / W, p % W};
                min_p = p;
                placed = true;
            } else {
                idx -= cnt;
            }
        }
        if (!placed) {
            throw std::logic_error("sample rank out of range");
        }
    }
}

bool all_inside(const std::vector<std::pair<int, int>>& m, const WindowSet& ws) {
    for (const auto& [seq, start] : m) {
        if (!ws.contains(seq, start)) {
            return false;
        }
    }
    return true;
}

struct SampleSearchOutcome {
    std::optional<Solution> best;
    std::uint64_t evaluated = 0;
    std::uint64_t skipped = 0;
};

// Deterministic min over k_best_align of every non-excluded sample.
SampleSearchOutcome sample_search(const Instance& instance, const SampleSpec& spec,
                                  const WindowSet* exclude, const SearchOptions& options) {
    check_spec(instance, spec);
    if (exclude != nullptr) {
        check_exclude(instance, spec, *exclude);
    }
    const std::uint64_t total = sample_count(instance, spec);
    if (total > options.budget) {
        throw BudgetExceeded("sample search refused", total, options.budget);
    }
    const Alphabet& alphabet = instance.alphabet();
    const int t = instance.t();
    const int W = start_width(instance, spec.length);

    const int threads = resolve_threads(options);
    const std::uint64_t chunk_count =
        std::max<std::uint64_t>(1, std::min<std::uint64_t>(total,
                                   static_cast<std::uint64_t>(threads) * 8));
    const std::uint64_t chunk_size = (total + chunk_count - 1) / chunk_count;

    struct ChunkResult {
        long long cost = -1;
        std::string pattern;
        std::uint64_t evaluated = 0;
        std::uint64_t skipped = 0;
    };
    std::vector<ChunkResult> results(static_cast<std::size_t>(chunk_count));
    parallel_tasks(chunk_count, threads, [&](std::uint64_t chunk) {
        const std::uint64_t begin = chunk * chunk_size;
        const std::uint64_t end = std::min(total, begin + chunk_size);
        if (begin >= end) {
            return;
        }
        ChunkResult local;
        std::vector<std::pair<int, int>> members;
        unrank_members(begin, members, spec, t, W);
        std::vector<std::string_view> rows(static_cast<std::size_t>(spec.r));
        std::string cons;
        for (std::uint64_t i = begin; i < end; ++i) {
            if (exclude != nullptr && all_inside(members, *exclude)) {
                ++local.skipped;
            } else {
                for (int j = 0; j < spec.r; ++j) {
                    const auto& [seq, start] = members[static_cast<std::size_t>(j)];
                    rows[static_cast<std::size_t>(j)] = instance.window(seq, start, spec.length);
                }
                consensus_into(rows, alphabet, cons);
                long long cost = 0;
                for (int s = 0; s < t; ++s) {
                    cost += best_occurrence(cons, s, instance).distance;
                }
                ++local.evaluated;
                if (local.cost < 0 || cost < local.cost ||
                    (cost == local.cost && pattern_less(cons, local.pattern, alphabet))) {
                    local.cost = cost;
                    local.pattern = cons;
                }
            }
            if (i + 1 < end && !advance_members(members, spec, t, W)) {
                throw std::logic_error("sample stream ended early");
            }
        }
        results[chunk] = std::move(local);
    });

    SampleSearchOutcome outcome;
    long long best_cost = -1;
    std::string best_pattern;
    for (const ChunkResult& c : results) {
        outcome.evaluated += c.evaluated;
        outcome.skipped += c.skipped;
        if (c.cost < 0) {
            continue;
        }
        if (best_cost < 0 || c.cost < best_cost ||
            (c.cost == best_cost && pattern_less(c.pattern, best_pattern, alphabet))) {
            best_cost = c.cost;
            best_pattern = c.pattern;
        }
    }
    if (best_cost >= 0) {
        // evaluate() reproduces the cost and supplies the leftmost
        // occurrences, completing the (cost, pattern, starts) tie-break.
        outcome.best = evaluate(best_pattern, instance);
    }
    return outcome;
}

} // namespace

std::uint64_t sample_count(const Instance& instance, const SampleSpec& spec) {
    check_spec(instance, spec);
    const std::uint64_t W = static_cast<std::uint64_t>(start_width(instance, spec.length));
    const std::uint64_t t = static_cast<std::uint64_t>(instance.t());
    const std::uint64_t r = static_cast<std::uint64_t>(spec.r);
    if (spec.mode == SampleMode::distinct_sequences) {
        return saturating_mul(saturating_binomial(t, r),
                              saturating_pow(W, static_cast<unsigned>(spec.r)));
    }
    return saturating_binomial(saturating_mul(t, W) + r - 1, r);
}

SampleEnumerator::SampleEnumerator(const Instance& instance, const SampleSpec& spec,
                                   const WindowSet* exclude)
    : instance_(&instance), spec_(spec), exclude_(exclude) {
    check_spec(instance, spec);
    if (exclude_ != nullptr) {
        check_exclude(instance, spec, *exclude_);
    }
    first_members(members_, spec_);
}

bool SampleEnumerator::next(Sample& out) {
    const int t = instance_->t();
    const int W = start_width(*instance_, spec_.length);
    for (;;) {
        if (exhausted_) {
            return false;
        }
        if (started_ && !advance_members(members_, spec_, t, W)) {
            exhausted_ = true;
            return false;
        }
        started_ = true;
        if (exclude_ != nullptr && all_inside(members_, *exclude_)) {
            ++skipped_;
            continue;
        }
        out.members.resize(static_cast<std::size_t>(spec_.r));
        for (int j = 0; j < spec_.r; ++j) {
            const auto& [seq, start] = members_[static_cast<std::size_t>(j)];
            out.members[static_cast<std::size_t>(j)] = Occurrence{seq, start, spec_.length};
        }
        ++yielded_;
        return true;
    }
}

Solution k_best_align(const Sample& sample, const Instance& instance) {
    if (sample.members.empty()) {
        throw std::invalid_argument("k_best_align: empty sample");
    }
    std::vector<std::string_view> rows;
    rows.reserve(sample.members.size());
    for (const Occurrence& occ : sample.members) {
        if (occ.start < 0 || occ.start + occ.length > instance.n()) {
            throw std::invalid_argument("k_best_align: member window out of range");
        }
        rows.push_back(instance.window(occ.seq_index, occ.start, occ.length));
    }
    return evaluate(consensus(rows, instance.alphabet()), instance);
}

PtasResult ptas(const Instance& instance, int length, int r, SampleMode mode,
                const SearchOptions& options) {
    SampleSearchOutcome outcome =
        sample_search(instance, SampleSpec{r, length, mode}, nullptr, options);
    return PtasResult{std::move(*outcome.best), outcome.evaluated};
}

WindowSet flanking_windows(const ReoptInput& input) {
    const int window_length = input.l() + input.k;
    const int max_start = input.instance.n() - window_length;
    WindowSet ws;
    ws.window_length = window_length;
    ws.start_intervals.reserve(input.given_occurrences.size());
    for (const Occurrence& occ : input.given_occurrences) {
        const int lo = std::max(0, occ.start - input.k);
        const int hi = std::min(occ.start, max_start) + 1;
        ws.start_intervals.emplace_back(lo, hi);
    }
    return ws;
}

ReoptPtasResult reopt_ptas(const ReoptInput& input, int r, SampleMode mode,
                           const SearchOptions& options) {
    ReoptPtasResult result;
    result.extend_solution = k_extend(input, options);
    const WindowSet windows = flanking_windows(input);
    SampleSearchOutcome outcome = sample_search(
        input.instance, SampleSpec{r, input.l() + input.k, mode}, &windows, options);
    result.samples_evaluated = outcome.evaluated;
    result.samples_skipped = outcome.skipped;
    result.sample_solution = std::move(outcome.best);
    if (result.sample_solution.has_value()) {
        const Solution candidates[] = {result.extend_solution, *result.sample_solution};
        result.solution = best_of(candidates, input.instance.alphabet());
    } else {
        result.solution = result.extend_solution;
    }
    return result;
}

double ratio_bound(int alphabet_size, int r, RatioForm form) {
    if (alphabet_size < 1) {
        throw std::invalid_argument("ratio_bound: alphabet size must be >= 1");
    }
    if (r < 1) {
        throw std::invalid_argument("ratio_bound: r must be >= 1");
    }
    if (alphabet_size == 1) {
        return 1.0;
    }
    const double root = std::sqrt(4.0 * r + 1.0);
    const double sqrt_e = std::exp(0.5);
    const double denom = form == RatioForm::A ? sqrt_e * root - 3.0 : sqrt_e * (root - 3.0);
    if (denom <= 0.0) {
        throw std::domain_error(
            form == RatioForm::A
                ? "ratio_bound form A needs r >= 1"
                : "ratio_bound form B needs r >= 3 (denominator is non-positive for r <= 2)");
    }
    return 1.0 + (4.0 * alphabet_size - 4.0) / denom;
}

} // namespace csr
