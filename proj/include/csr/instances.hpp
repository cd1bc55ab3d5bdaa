// Instance generators (adversarial families and seeded benchmarks) and the
// instance / solution file formats.
#ifndef CSR_INSTANCES_HPP
#define CSR_INSTANCES_HPP

#include "csr/core.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csr {

struct CertifiedSolution {
    int length = 0;
    Solution solution;
    bool optimal = false; // true when the cost is known optimal by construction
};

/// An instance together with solutions known by construction and the full
/// provenance (generator name, parameters, seed) that reproduces it.
struct LabeledInstance {
    Instance instance;
    std::vector<CertifiedSolution> certified;
    std::string provenance;
};

/// Family of sequences on which every one-column extension of the cost-0
/// optimum "B^l" is expensive while a cost-1 pattern extends to the (l+1)
/// optimum. Row j=0 carries the single deviant B. Alphabet is {A, B} plus t
/// distinct marker symbols, |Sigma| = t+2. Certifies (l, B^l, cost 0).
LabeledInstance gen_claim1(int t, int l);

/// Family over {A,B} whose short optimum is disjoint from the longer one:
/// t-1 rows A^(l+k) B^l A plus one row B^(2l+k) A. Certifies nothing; the
/// exact solvers adjudicate.
LabeledInstance gen_shrink(int t, int l, int k);

/// Uniform i.i.d. sequences from a seeded generator; identical parameters
/// reproduce identical instances on every platform.
LabeledInstance gen_random(int t, int n, int alphabet_size, std::uint64_t seed);

/// Random sequences with a hidden pattern of the given length planted into
/// each row, mutated in at most d positions. Certifies the planted pattern's
/// evaluated cost (an upper bound of t*d, not necessarily optimal).
LabeledInstance gen_planted(int t, int n, int length, int d, std::uint64_t seed,
                            int alphabet_size = 4);

// --- instance files -------------------------------------------------------
//
// Line 1:  #csr v1 t=<t> n=<n> sigma=<symbols>
// Then t sequence lines. LF endings, no trailing whitespace.

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& origin, int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

std::string format_instance(const Instance& instance);
Instance parse_instance(std::string_view text, const std::string& origin = "<string>");
Instance read_instance(const std::filesystem::path& path);
void write_instance(const Instance& instance, const std::filesystem::path& path);

// --- solution files ---------------------------------------------------------
//
// Single JSON document; field order is fixed:
// {pattern, cost, occurrences: [[seq,start]...], algorithm, params, provenance}

struct SolutionDoc {
    Solution solution;
    std::string algorithm;
    std::map<std::string, std::string> params;
    std::string provenance;
};

std::string format_solution(const SolutionDoc& doc);
SolutionDoc parse_solution(std::string_view text, const std::string& origin = "<string>");
SolutionDoc read_solution(const std::filesystem::path& path);
/// Reads and re-verifies the document against an instance: occurrences must
/// be in range and the stored cost must match the recomputed cost.
SolutionDoc read_solution(const std::filesystem::path& path, const Instance& instance);
void write_solution(const SolutionDoc& doc, const std::filesystem::path& path);

} // namespace csr

#endif
