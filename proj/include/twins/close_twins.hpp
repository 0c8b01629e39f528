#ifndef TWINS_CLOSE_TWINS_HPP
#define TWINS_CLOSE_TWINS_HPP

#include <cstdint>
#include <vector>

#include "twins/permutation.hpp"

namespace twins {

/// Integer parameters of the close-twins rounds, all derived from the ground
/// bound n with exact integer roots.
struct CloseTwinsParams {
    std::uint64_t n = 0;
    std::uint64_t r = 0;                   // ceil(2 n^(3/5)), triples per window
    std::uint64_t tau = 0;                 // floor(n^(2/5)), closeness threshold
    std::uint64_t trim_target = 0;         // ceil(n^(1/5))
    std::uint64_t min_window_length = 0;   // 3r
    std::uint64_t rounds_target = 0;       // floor(n^(2/5) / 7)
    std::uint64_t spread_limit = 0;        // floor(2n / r)
    std::uint64_t deletion_allowance = 0;  // ceil(7 n^(3/5))

    static CloseTwinsParams for_n(std::uint64_t n);

    /// Most elements one trimmed round can remove: the window plus, per
    /// interval, tau + 1 values minus the two window values it holds.
    std::uint64_t max_round_deletion() const { return 3 * r + (tau - 1) * trim_target; }
};

struct CloseTwinsOptions {
    bool trim = true;  // false keeps the whole common index set each round
};

struct WindowUnderflow : Error {
    using Error::Error;
};

struct RoundOutcome {
    std::vector<Value> prefix_first;   // c^(k) restricted to I, in host order
    std::vector<Value> prefix_second;  // c^(l) restricted to I
    std::vector<Position> prefix_first_positions;   // positions in the round's input
    std::vector<Position> prefix_second_positions;
    Permutation remainder;
    std::vector<Position> remainder_positions;  // positions in the round's input
    std::size_t deleted_count = 0;

    std::size_t triples_kept = 0;  // |I0|
    int pair_first = 0;            // k
    int pair_second = 1;           // l
    std::size_t common_length = 0;  // |I| before trimming
};

/// One round on the first 3r elements of p. Throws WindowUnderflow when
/// |p| < 3r and GuaranteeViolation when a step's size bound fails.
RoundOutcome close_twins_round(const Permutation& p, const CloseTwinsParams& params,
                               const CloseTwinsOptions& options = {});

struct RoundTrace {
    std::size_t triples_kept = 0;
    int pair_first = 0;
    int pair_second = 1;
    std::size_t common_length = 0;
    std::size_t kept_length = 0;
    std::size_t deleted_count = 0;
    std::size_t remaining = 0;
};

struct CloseTwinsResult {
    TwinPair twins;
    std::vector<RoundTrace> rounds;
};

/// Runs rounds while the remainder still fills a window and concatenates
/// the prefixes. The result carries closeness_bound = tau and has been
/// re-checked with verify_twins.
CloseTwinsResult find_close_twins(const Permutation& p, const CloseTwinsOptions& options = {});

struct Thm1Result {
    TwinPair twins;
    std::vector<RoundTrace> rounds;
    bool used_fallback = false;  // monotone baseline beat the rounds
};

/// Longer of find_close_twins and es_baseline_twins.
Thm1Result thm1_twins(const Permutation& p, const CloseTwinsOptions& options = {});

/// Lower bound on thm1_twins length for permutations of [n]:
/// max(floor(ceil(sqrt n) / 2), floor(n^(2/5)/7) * ceil(n^(1/5)) when n >= 56^(5/2)).
std::size_t thm1_guarantee(std::uint64_t n);

/// Rounds the loop is certain to execute on m elements from [n], using
/// max_round_deletion as the per-round cost.
std::size_t guaranteed_rounds(std::uint64_t m, std::uint64_t n);

/// max(es bound, trim_target * guaranteed_rounds(m, n)); holds for every
/// input of length m over [n].
std::size_t thm1_worst_case_bound(std::uint64_t m, std::uint64_t n);

}  // namespace twins

#endif
