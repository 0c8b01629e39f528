#include "twins/close_twins.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "twins/introot.hpp"
#include "twins/monotone.hpp"

namespace twins {

CloseTwinsParams CloseTwinsParams::for_n(std::uint64_t n) {
    CloseTwinsParams p;
    p.n = n;
    p.r = std::max<std::uint64_t>(1, introot::ceil_scaled_power(2, n, 3, 5));
    p.tau = introot::floor_root(introot::ipow(n, 2), 5);
    p.trim_target = introot::ceil_root(n, 5);
    p.min_window_length = 3 * p.r;
    p.rounds_target = introot::floor_power_over(n, 2, 5, 7);
    p.spread_limit = 2 * n / p.r;
    p.deletion_allowance = introot::ceil_scaled_power(7, n, 3, 5);
    return p;
}

RoundOutcome close_twins_round(const Permutation& p, const CloseTwinsParams& params,
                               const CloseTwinsOptions& options) {
    const std::size_t window = params.min_window_length;
    const std::size_t r = params.r;
    if (p.size() < window) {
        throw WindowUnderflow("window underflow: " + std::to_string(p.size()) + " elements, window needs " +
                              std::to_string(window));
    }
    const auto vals = p.values();

    // Window positions sorted by value: rank t holds b_t, in triple t / 3.
    std::vector<std::size_t> by_value(window);
    std::iota(by_value.begin(), by_value.end(), std::size_t{0});
    std::sort(by_value.begin(), by_value.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    auto b = [&](std::size_t t) { return vals[by_value[t]]; };

    std::vector<bool> kept_triple(r, false);
    std::size_t triples_kept = 0;
    for (std::size_t i = 0; i < r; ++i) {
        if (static_cast<std::uint64_t>(b(3 * i + 2) - b(3 * i)) <= params.spread_limit) {
            kept_triple[i] = true;
            ++triples_kept;
        }
    }
    if (2 * triples_kept < r) {
        throw GuaranteeViolation("narrow-triple step: only " + std::to_string(triples_kept) + " of " +
                                 std::to_string(r) + " triples have spread <= " +
                                 std::to_string(params.spread_limit) + " (values outside [1, n]?)");
    }

    // c-hat^(j): window order, each kept element replaced by its triple index.
    std::vector<std::size_t> rank_of(window);
    for (std::size_t t = 0; t < window; ++t) {
        rank_of[by_value[t]] = t;
    }
    std::array<std::vector<Value>, 3> relabeled;
    for (std::size_t pos = 0; pos < window; ++pos) {
        const std::size_t t = rank_of[pos];
        if (kept_triple[t / 3]) {
            relabeled[t % 3].push_back(static_cast<Value>(t / 3));
        }
    }

    auto common = bhn_select(relabeled[0], relabeled[1], relabeled[2]);
    if (common.symbols.size() < params.trim_target) {
        throw GuaranteeViolation("common-subpermutation step: length " + std::to_string(common.symbols.size()) +
                                 " below " + std::to_string(params.trim_target));
    }
    const std::size_t keep = options.trim ? params.trim_target : common.symbols.size();

    RoundOutcome out;
    out.triples_kept = triples_kept;
    out.pair_first = common.first_index;
    out.pair_second = common.second_index;
    out.common_length = common.symbols.size();
    for (std::size_t s = 0; s < keep; ++s) {
        const auto i = static_cast<std::size_t>(common.symbols[s]);
        const std::size_t tk = 3 * i + static_cast<std::size_t>(common.first_index);
        const std::size_t tl = 3 * i + static_cast<std::size_t>(common.second_index);
        out.prefix_first.push_back(b(tk));
        out.prefix_second.push_back(b(tl));
        out.prefix_first_positions.push_back(by_value[tk] + 1);
        out.prefix_second_positions.push_back(by_value[tl] + 1);
    }

    // Remainder: drop the window and every value in some [c_i, c_i + tau].
    std::vector<Value> starts = out.prefix_first;
    std::sort(starts.begin(), starts.end());
    const auto tau = static_cast<Value>(params.tau);
    auto covered = [&](Value v) {
        auto it = std::upper_bound(starts.begin(), starts.end(), v);
        return it != starts.begin() && v <= *(it - 1) + tau;
    };
    std::vector<Value> rest;
    rest.reserve(p.size() - window);
    for (std::size_t pos = window; pos < p.size(); ++pos) {
        if (!covered(vals[pos])) {
            rest.push_back(vals[pos]);
            out.remainder_positions.push_back(pos + 1);
        }
    }
    out.deleted_count = p.size() - rest.size();
    const std::uint64_t max_deleted = window + (params.tau - 1) * keep;
    if (out.deleted_count > max_deleted) {
        throw GuaranteeViolation("deletion step: removed " + std::to_string(out.deleted_count) + " > " +
                                 std::to_string(max_deleted));
    }
    out.remainder = unchecked_permutation(std::move(rest), p.ground_bound());
    return out;
}

CloseTwinsResult find_close_twins(const Permutation& p, const CloseTwinsOptions& options) {
    const auto params = CloseTwinsParams::for_n(static_cast<std::uint64_t>(p.ground_bound()));
    CloseTwinsResult res;
    res.twins.host = p;
    res.twins.closeness_bound = static_cast<Value>(params.tau);

    Permutation current = p;
    std::vector<Position> origin(p.size());  // position in p of each element of current
    std::iota(origin.begin(), origin.end(), Position{1});

    while (current.size() >= params.min_window_length && params.n >= 2) {
        auto round = close_twins_round(current, params, options);
        for (std::size_t s = 0; s < round.prefix_first.size(); ++s) {
            res.twins.first.positions.push_back(origin[round.prefix_first_positions[s] - 1]);
            res.twins.second.positions.push_back(origin[round.prefix_second_positions[s] - 1]);
        }
        std::vector<Position> next_origin;
        next_origin.reserve(round.remainder_positions.size());
        for (Position q : round.remainder_positions) {
            next_origin.push_back(origin[q - 1]);
        }
        res.rounds.push_back({round.triples_kept, round.pair_first, round.pair_second, round.common_length,
                              round.prefix_first.size(), round.deleted_count, round.remainder.size()});
        origin = std::move(next_origin);
        current = std::move(round.remainder);
    }

    // Each round's prefixes lie inside its window, and every later round
    // works on elements after that window.
    auto verdict = verify_twins(res.twins);
    if (!verdict) {
        throw GuaranteeViolation("concatenated close twins failed verification: " + verdict.diagnostic);
    }
    return res;
}

Thm1Result thm1_twins(const Permutation& p, const CloseTwinsOptions& options) {
    Thm1Result out;
    auto close = find_close_twins(p, options);
    auto baseline = es_baseline_twins(p);
    out.rounds = std::move(close.rounds);
    if (baseline.length() > close.twins.length()) {
        out.twins = std::move(baseline);
        out.used_fallback = true;
    } else {
        out.twins = std::move(close.twins);
    }
    return out;
}

std::size_t thm1_guarantee(std::uint64_t n) {
    if (n < 2) {
        return 0;
    }
    std::size_t bound = es_guarantee(n);
    // n >= 56^(5/2)  <=>  n^2 >= 56^5
    if (introot::ipow(n, 2) >= introot::ipow(56, 5)) {
        const auto params = CloseTwinsParams::for_n(n);
        bound = std::max<std::size_t>(bound, params.rounds_target * params.trim_target);
    }
    return bound;
}

std::size_t guaranteed_rounds(std::uint64_t m, std::uint64_t n) {
    if (n < 2) {
        return 0;
    }
    const auto params = CloseTwinsParams::for_n(n);
    if (m < params.min_window_length) {
        return 0;
    }
    return 1 + (m - params.min_window_length) / params.max_round_deletion();
}

std::size_t thm1_worst_case_bound(std::uint64_t m, std::uint64_t n) {
    if (n < 2) {
        return 0;
    }
    const auto params = CloseTwinsParams::for_n(n);
    return std::max<std::size_t>(es_guarantee(m), params.trim_target * guaranteed_rounds(m, n));
}

}  // namespace twins
