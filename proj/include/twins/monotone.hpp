#ifndef TWINS_MONOTONE_HPP
#define TWINS_MONOTONE_HPP

#include <array>
#include <span>
#include <vector>

#include "twins/permutation.hpp"

namespace twins {

enum class Direction { increasing, decreasing };

struct SymbolSetMismatch : Error {
    using Error::Error;
};

/// Raised when a guarantee that the math says cannot fail does fail.
struct GuaranteeViolation : Error {
    using Error::Error;
};

/// Longest strictly monotone subsequence by patience sorting, O(m log m).
/// The witness is the one the back-pointers yield (last pile, latest entry).
PositionSubsequence lis(std::span<const Value> values, Direction dir = Direction::increasing);
PositionSubsequence lis(const Permutation& p, Direction dir = Direction::increasing);

/// Longest common subsequence of two sequences over the same symbol set:
/// relabel x by positions in y, then take the LIS.
std::vector<Value> lcs_of_permutations(std::span<const Value> x, std::span<const Value> y);

struct CommonSubpermutation {
    int first_index = 0;   // k
    int second_index = 1;  // l, k < l
    std::vector<Value> symbols;
};

/// Of the three pairs, the one with the longest LCS (ties: smallest (k, l)).
/// Asserts length^3 >= m and throws GuaranteeViolation otherwise.
CommonSubpermutation bhn_select(std::span<const Value> c0, std::span<const Value> c1, std::span<const Value> c2);

/// Longer of LIS/LDS (increasing on ties), split into halves.
TwinPair es_baseline_twins(const Permutation& p);

/// floor(ceil(sqrt(m)) / 2): what es_baseline_twins always reaches.
std::size_t es_guarantee(std::size_t m);

}  // namespace twins

#endif
