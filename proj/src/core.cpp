#include "csr/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace csr {

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
    if (symbols_.size() < 2) {
        throw std::invalid_argument("alphabet needs at least 2 symbols");
    }
    ranks_.fill(-1);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(symbols_[i]);
        if (ranks_[c] != -1) {
            throw std::invalid_argument("alphabet symbols must be distinct");
        }
        ranks_[c] = static_cast<int>(i);
    }
}

Instance::Instance(Alphabet alphabet, std::vector<std::string> sequences)
    : alphabet_(std::move(alphabet)), sequences_(std::move(sequences)) {
    if (sequences_.empty()) {
        throw std::invalid_argument("instance needs at least one sequence");
    }
    n_ = static_cast<int>(sequences_.front().size());
    if (n_ < 1) {
        throw std::invalid_argument("sequences must be non-empty");
    }
    for (const std::string& s : sequences_) {
        if (static_cast<int>(s.size()) != n_) {
            throw std::invalid_argument("sequences must have uniform length");
        }
        for (char c : s) {
            if (!alphabet_.contains(c)) {
                throw std::invalid_argument(std::string("sequence symbol '") + c +
                                            "' not in alphabet");
            }
        }
    }
}

long long hamming(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hamming: length mismatch");
    }
    long long d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i];
    }
    return d;
}

void consensus_into(const std::vector<std::string_view>& rows, const Alphabet& alphabet,
                    std::string& out) {
    if (rows.empty()) {
        throw std::invalid_argument("consensus: empty row set");
    }
    const std::size_t len = rows.front().size();
    if (len == 0) {
        throw std::invalid_argument("consensus: zero-length rows");
    }
    for (const std::string_view& r : rows) {
        if (r.size() != len) {
            throw std::invalid_argument("consensus: ragged row lengths");
        }
    }
    const int sigma = alphabet.size();
    static thread_local std::vector<int> counts;
    counts.assign(static_cast<std::size_t>(sigma), 0);
    out.resize(len);
    for (std::size_t j = 0; j < len; ++j) {
        std::fill(counts.begin(), counts.end(), 0);
        for (const std::string_view& r : rows) {
            int rk = alphabet.rank(r[j]);
            if (rk < 0) {
                throw std::invalid_argument("consensus: symbol not in alphabet");
            }
            ++counts[static_cast<std::size_t>(rk)];
        }
        int best = 0;
        for (int s = 1; s < sigma; ++s) {
            if (counts[static_cast<std::size_t>(s)] > counts[static_cast<std::size_t>(best)]) {
                best = s; // strict > keeps the earliest symbol on ties
            }
        }
        out[j] = alphabet.symbol(best);
    }
}

std::string consensus(const std::vector<std::string_view>& rows, const Alphabet& alphabet) {
    std::string out;
    consensus_into(rows, alphabet, out);
    return out;
}

std::string consensus(const std::vector<std::string>& rows, const Alphabet& alphabet) {
    std::vector<std::string_view> views(rows.begin(), rows.end());
    return consensus(views, alphabet);
}

ScoredOccurrence best_occurrence(std::string_view pattern, int seq_index,
                                 const Instance& instance) {
    const int L = static_cast<int>(pattern.size());
    if (L < 1 || L > instance.n()) {
        throw std::invalid_argument("best_occurrence: pattern length out of range");
    }
    const std::string& seq = instance.sequence(seq_index);
    long long best_d = -1;
    int best_start = 0;
    for (int s = 0; s + L <= instance.n(); ++s) {
        long long d = 0;
        for (int j = 0; j < L; ++j) {
            d += pattern[static_cast<std::size_t>(j)] != seq[static_cast<std::size_t>(s + j)];
        }
        if (best_d < 0 || d < best_d) {
            best_d = d;
            best_start = s;
        }
    }
    return ScoredOccurrence{Occurrence{seq_index, best_start, L}, best_d};
}

Solution evaluate(std::string_view pattern, const Instance& instance) {
    Solution sol;
    sol.pattern.assign(pattern);
    sol.occurrences.reserve(static_cast<std::size_t>(instance.t()));
    for (int i = 0; i < instance.t(); ++i) {
        ScoredOccurrence so = best_occurrence(pattern, i, instance);
        sol.occurrences.push_back(so.occurrence);
        sol.cost += so.distance;
    }
    return sol;
}

bool pattern_less(std::string_view a, std::string_view b, const Alphabet& alphabet) {
    const std::size_t m = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < m; ++i) {
        int ra = alphabet.rank(a[i]);
        int rb = alphabet.rank(b[i]);
        if (ra != rb) {
            return ra < rb;
        }
    }
    return a.size() < b.size();
}

bool solution_less(const Solution& a, const Solution& b, const Alphabet& alphabet) {
    if (a.cost != b.cost) {
        return a.cost < b.cost;
    }
    if (a.pattern != b.pattern) {
        return pattern_less(a.pattern, b.pattern, alphabet);
    }
    const std::size_t m = std::min(a.occurrences.size(), b.occurrences.size());
    for (std::size_t i = 0; i < m; ++i) {
        const Occurrence& oa = a.occurrences[i];
        const Occurrence& ob = b.occurrences[i];
        if (oa.seq_index != ob.seq_index) {
            return oa.seq_index < ob.seq_index;
        }
        if (oa.start != ob.start) {
            return oa.start < ob.start;
        }
    }
    return a.occurrences.size() < b.occurrences.size();
}

long long recompute_cost(const Solution& solution, const Instance& instance) {
    if (solution.occurrences.size() != static_cast<std::size_t>(instance.t())) {
        throw std::invalid_argument("solution must carry one occurrence per sequence");
    }
    long long total = 0;
    for (int i = 0; i < instance.t(); ++i) {
        const Occurrence& occ = solution.occurrences[static_cast<std::size_t>(i)];
        if (occ.seq_index != i) {
            throw std::invalid_argument("occurrence order must follow sequence order");
        }
        if (occ.length != static_cast<int>(solution.pattern.size())) {
            throw std::invalid_argument("occurrence length must equal pattern length");
        }
        if (occ.start < 0 || occ.start + occ.length > instance.n()) {
            throw std::invalid_argument("occurrence window out of range");
        }
        total += hamming(solution.pattern, instance.window(i, occ.start, occ.length));
    }
    return total;
}

} // namespace csr
