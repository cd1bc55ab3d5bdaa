// Two independent exact brute-force solvers. They are the ground truth every
// approximation bound in this library is measured against, so neither prunes:
// each one either enumerates its whole space or refuses on budget.
#ifndef CSR_EXACT_HPP
#define CSR_EXACT_HPP

#include "csr/core.hpp"
#include "csr/search.hpp"

namespace csr {

enum class OracleKind { alignment, pattern };

/// Enumerates every tuple of one L-substring per sequence, scores the
/// column-majority consensus of each tuple against the tuple, and returns the
/// global minimum. Ties: lexicographically smallest pattern (alphabet order),
/// then smallest occurrence start vector. Refuses if (n-L+1)^t exceeds the
/// budget.
Solution solve_alignment(const Instance& instance, int length,
                         const SearchOptions& options = {});

/// Enumerates every pattern in Sigma^L and evaluates it against the instance.
/// Same tie-break contract as solve_alignment. Refuses if |Sigma|^L exceeds
/// the budget.
Solution solve_pattern(const Instance& instance, int length,
                       const SearchOptions& options = {});

Solution solve_exact(OracleKind kind, const Instance& instance, int length,
                     const SearchOptions& options = {});

} // namespace csr

#endif
