// Sampling-based approximation: r-sample enumeration over the input
// substrings, the consensus-of-sample solver, and the reoptimization variant
// that skips every sample already covered by the K-EXTEND flanking windows.
#ifndef CSR_PTAS_HPP
#define CSR_PTAS_HPP

#include "csr/core.hpp"
#include "csr/reopt.hpp"
#include "csr/search.hpp"

#include <optional>

namespace csr {

enum class SampleMode {
    /// No two members from the same sequence (the default definition).
    distinct_sequences,
    /// Members are an unordered multiset of substring positions; the same
    /// position may repeat and sequences may contribute more than one member.
    multiset,
};

struct SampleSpec {
    int r = 1;
    int length = 1;
    SampleMode mode = SampleMode::distinct_sequences;
};

/// A selection of r substring positions (text is never copied).
struct Sample {
    std::vector<Occurrence> members;
};

/// Per-sequence interval [lo, hi) of window starts lying inside the k-flanked
/// region around the given occurrences; exactly the windows the extension
/// search can produce.
struct WindowSet {
    std::vector<std::pair<int, int>> start_intervals;
    int window_length = 0;

    bool contains(int seq_index, int start) const {
        const auto& iv = start_intervals[static_cast<std::size_t>(seq_index)];
        return start >= iv.first && start < iv.second;
    }
};

/// Number of samples the spec defines on this instance (closed form,
/// saturating at 2^64-1).
std::uint64_t sample_count(const Instance& instance, const SampleSpec& spec);

/// Streams every sample of the spec exactly once, in lexicographic order over
/// the member tuples (sequences ascending, then starts ascending). When an
/// exclusion set is given, samples whose members ALL lie inside their
/// sequence's window interval are omitted and counted as skipped.
class SampleEnumerator {
public:
    SampleEnumerator(const Instance& instance, const SampleSpec& spec,
                     const WindowSet* exclude = nullptr);

    bool next(Sample& out);
    std::uint64_t yielded() const { return yielded_; }
    std::uint64_t skipped() const { return skipped_; }

private:
    const Instance* instance_;
    SampleSpec spec_;
    const WindowSet* exclude_;
    std::vector<std::pair<int, int>> members_; // (seq, start)
    bool exhausted_ = false;
    bool started_ = false;
    std::uint64_t yielded_ = 0;
    std::uint64_t skipped_ = 0;
};

/// Consensus of the sample's member substrings, evaluated against the whole
/// instance.
Solution k_best_align(const Sample& sample, const Instance& instance);

struct PtasResult {
    Solution solution;
    std::uint64_t samples_evaluated = 0;
};

/// Minimum-cost k_best_align over every sample of (r, length, mode).
PtasResult ptas(const Instance& instance, int length, int r,
                SampleMode mode = SampleMode::distinct_sequences,
                const SearchOptions& options = {});

/// Start intervals of the (l+k)-windows inside the k-flanked region of each
/// given occurrence: [start-k, start] clamped to valid window starts.
WindowSet flanking_windows(const ReoptInput& input);

struct ReoptPtasResult {
    Solution solution;
    Solution extend_solution;                 // branch A: k_extend
    std::optional<Solution> sample_solution;  // branch B: best non-skipped sample
    std::uint64_t samples_evaluated = 0;
    std::uint64_t samples_skipped = 0;
};

/// Best of the extension search and the sampling search restricted to samples
/// outside the flanking windows.
ReoptPtasResult reopt_ptas(const ReoptInput& input, int r,
                           SampleMode mode = SampleMode::distinct_sequences,
                           const SearchOptions& options = {});

enum class RatioForm { A, B };

/// The printed approximation-ratio value sigma for a given alphabet size and
/// sample size r. Form A: 1 + (4|S|-4)/(sqrt(e)*sqrt(4r+1) - 3).
/// Form B:             1 + (4|S|-4)/(sqrt(e)*(sqrt(4r+1) - 3)), needs r >= 3.
double ratio_bound(int alphabet_size, int r, RatioForm form = RatioForm::A);

} // namespace csr

#endif
