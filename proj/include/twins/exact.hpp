#ifndef TWINS_EXACT_HPP
#define TWINS_EXACT_HPP

#include <cstdint>

#include "twins/permutation.hpp"

namespace twins {

struct OracleBudget {
    std::size_t max_length_single = 12;  // cap on |p| for exact_twins
    std::size_t max_n_universal = 8;     // cap on n for exact_t_of_n
    std::uint64_t node_limit = 50'000'000;  // search nodes per exact_twins call
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct ExactResult {
    TwinPair twins;
    bool exact = true;  // false: node limit hit, twins is only the best found
    std::uint64_t nodes = 0;
};

/// Longest twins of p. Targets L = floor(|p|/2) downwards, stopping at the
/// first feasible one; each target is a depth-first search over
/// (first, second, skip) per position with failed states memoised by
/// (position, ranks of both partial twins among partials + unread values).
/// Throws Error when |p| exceeds budget.max_length_single.
ExactResult exact_twins(const Permutation& p, const OracleBudget& budget = {});

struct UniversalResult {
    std::size_t t = 0;
    Permutation witness;  // a permutation of [n] whose longest twins have length t
    std::uint64_t permutations_examined = 0;
};

/// min over all permutations of [n] of the longest twin length; only one
/// representative per reversal/complement class is searched.
/// Throws Error above budget.max_n_universal and BudgetExceeded if any
/// single search runs out of nodes. n < 2 gives 0.
UniversalResult exact_t_of_n(std::size_t n, const OracleBudget& budget = {});

}  // namespace twins

#endif
