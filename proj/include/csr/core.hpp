// Core cost model for the closest substring / consensus pattern solvers:
// alphabet, instance and solution types, Hamming distance, column-majority
// consensus, occurrence search and total-cost evaluation.
#ifndef CSR_CORE_HPP
#define CSR_CORE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace csr {

/// Ordered set of distinct single-character symbols. The ordering is total
/// and fixed at construction; every deterministic tie-break in the library
/// (consensus columns, pattern comparisons) uses this order, not byte order.
class Alphabet {
public:
    explicit Alphabet(std::string_view symbols);

    int size() const { return static_cast<int>(symbols_.size()); }
    char symbol(int rank) const { return symbols_[static_cast<std::size_t>(rank)]; }
    /// Rank of a symbol in the alphabet order, -1 if the symbol is unknown.
    int rank(char c) const { return ranks_[static_cast<unsigned char>(c)]; }
    bool contains(char c) const { return rank(c) >= 0; }
    const std::string& symbols() const { return symbols_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.symbols_ == b.symbols_;
    }

private:
    std::string symbols_;
    std::array<int, 256> ranks_{};
};

/// Problem input: t sequences of uniform length n over one alphabet.
/// Immutable after construction.
class Instance {
public:
    Instance(Alphabet alphabet, std::vector<std::string> sequences);

    const Alphabet& alphabet() const { return alphabet_; }
    int t() const { return static_cast<int>(sequences_.size()); }
    int n() const { return n_; }
    const std::vector<std::string>& sequences() const { return sequences_; }
    const std::string& sequence(int i) const { return sequences_[static_cast<std::size_t>(i)]; }
    /// View of sequence i starting at `start`, `length` characters.
    std::string_view window(int i, int start, int length) const {
        return std::string_view(sequences_[static_cast<std::size_t>(i)]).substr(
            static_cast<std::size_t>(start), static_cast<std::size_t>(length));
    }

private:
    Alphabet alphabet_;
    std::vector<std::string> sequences_;
    int n_;
};

/// One chosen substring of one sequence, measured against a pattern.
struct Occurrence {
    int seq_index = 0;
    int start = 0;
    int length = 0;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

/// A pattern together with one occurrence per sequence and the total Hamming
/// cost. `cost` is always recomputable from the other two fields.
struct Solution {
    std::string pattern;
    std::vector<Occurrence> occurrences;
    long long cost = 0;

    friend bool operator==(const Solution&, const Solution&) = default;
};

/// Number of mismatching positions between two equal-length strings.
/// Throws std::invalid_argument on a length mismatch (caller bug).
long long hamming(std::string_view a, std::string_view b);

/// Column-majority consensus of a non-empty set of equal-length strings.
/// Column ties go to the symbol earliest in the alphabet order. The result
/// minimizes the total Hamming distance to `rows` over all patterns.
std::string consensus(const std::vector<std::string_view>& rows, const Alphabet& alphabet);
std::string consensus(const std::vector<std::string>& rows, const Alphabet& alphabet);
/// Allocation-free variant for hot loops; `out` is resized to the row length.
void consensus_into(const std::vector<std::string_view>& rows, const Alphabet& alphabet,
                    std::string& out);

struct ScoredOccurrence {
    Occurrence occurrence;
    long long distance = 0;
};

/// Minimum-distance occurrence of `pattern` in sequence `seq_index`; ties go
/// to the smallest start. Throws if the pattern is longer than the sequence.
ScoredOccurrence best_occurrence(std::string_view pattern, int seq_index,
                                 const Instance& instance);

/// Full evaluation of a pattern: best occurrence per sequence, summed cost.
Solution evaluate(std::string_view pattern, const Instance& instance);

/// Lexicographic comparison of equal-role strings under the alphabet order.
bool pattern_less(std::string_view a, std::string_view b, const Alphabet& alphabet);

/// Deterministic total order used by every min-reduction in the library:
/// cost, then pattern (alphabet order), then occurrence starts.
bool solution_less(const Solution& a, const Solution& b, const Alphabet& alphabet);

/// Recomputes the cost of a solution against an instance, validating that
/// every occurrence is in range. Used by tests and by file loaders to check
/// the stored-cost invariant.
long long recompute_cost(const Solution& solution, const Instance& instance);

} // namespace csr

#endif
