#include "twins/monotone.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "twins/introot.hpp"

namespace twins {

PositionSubsequence lis(std::span<const Value> values, Direction dir) {
    const std::size_t m = values.size();
    auto before = [dir](Value a, Value b) { return dir == Direction::increasing ? a < b : a > b; };

    // tails[k] = index of the smallest possible tail of a run of length k+1
    std::vector<std::size_t> tails;
    std::vector<std::size_t> pred(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i) {
        auto it = std::lower_bound(tails.begin(), tails.end(), values[i],
                                   [&](std::size_t t, Value v) { return before(values[t], v); });
        if (it != tails.begin()) {
            pred[i] = *(it - 1);
        }
        if (it == tails.end()) {
            tails.push_back(i);
        } else {
            *it = i;
        }
    }

    PositionSubsequence out;
    out.positions.resize(tails.size());
    std::size_t cur = tails.empty() ? SIZE_MAX : tails.back();
    for (std::size_t k = tails.size(); k-- > 0;) {
        out.positions[k] = cur + 1;
        cur = pred[cur];
    }
    return out;
}

PositionSubsequence lis(const Permutation& p, Direction dir) { return lis(p.values(), dir); }

std::vector<Value> lcs_of_permutations(std::span<const Value> x, std::span<const Value> y) {
    if (x.size() != y.size()) {
        throw SymbolSetMismatch("lcs_of_permutations: sizes " + std::to_string(x.size()) + " and " +
                                std::to_string(y.size()));
    }
    // (symbol, position in y), sorted by symbol
    std::vector<std::pair<Value, Value>> where(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
        where[j] = {y[j], static_cast<Value>(j)};
    }
    std::sort(where.begin(), where.end());
    for (std::size_t j = 1; j < where.size(); ++j) {
        if (where[j - 1].first == where[j].first) {
            throw SymbolSetMismatch("lcs_of_permutations: duplicate symbol " + std::to_string(where[j].first));
        }
    }

    std::vector<Value> relabeled(x.size());
    std::vector<bool> hit(x.size(), false);
    for (std::size_t i = 0; i < x.size(); ++i) {
        auto it = std::lower_bound(where.begin(), where.end(), std::pair<Value, Value>{x[i], Value{-1}});
        if (it == where.end() || it->first != x[i]) {
            throw SymbolSetMismatch("lcs_of_permutations: symbol " + std::to_string(x[i]) + " missing from y");
        }
        auto j = static_cast<std::size_t>(it->second);
        if (hit[j]) {
            throw SymbolSetMismatch("lcs_of_permutations: duplicate symbol " + std::to_string(x[i]));
        }
        hit[j] = true;
        relabeled[i] = it->second;
    }

    std::vector<Value> out;
    for (Position pos : lis(relabeled).positions) {
        out.push_back(x[pos - 1]);
    }
    return out;
}

CommonSubpermutation bhn_select(std::span<const Value> c0, std::span<const Value> c1, std::span<const Value> c2) {
    const std::array<std::span<const Value>, 3> c{c0, c1, c2};
    CommonSubpermutation best;
    bool first = true;
    for (int k = 0; k < 3; ++k) {
        for (int l = k + 1; l < 3; ++l) {
            auto common = lcs_of_permutations(c[k], c[l]);
            if (first || common.size() > best.symbols.size()) {
                best = {k, l, std::move(common)};
                first = false;
            }
        }
    }
    const auto m = static_cast<introot::u128>(c0.size());
    if (introot::ipow(best.symbols.size(), 3) < m) {
        throw GuaranteeViolation("common subpermutation of length " + std::to_string(best.symbols.size()) +
                                 " among three permutations of size " + std::to_string(c0.size()) +
                                 " is below the cube-root bound");
    }
    return best;
}

std::size_t es_guarantee(std::size_t m) { return introot::ceil_root(m, 2) / 2; }

TwinPair es_baseline_twins(const Permutation& p) {
    auto up = lis(p, Direction::increasing);
    auto down = lis(p, Direction::decreasing);
    const auto& run = down.size() > up.size() ? down : up;
    const std::size_t half = run.size() / 2;

    TwinPair t;
    t.host = p;
    t.first.positions.assign(run.positions.begin(), run.positions.begin() + static_cast<std::ptrdiff_t>(half));
    t.second.positions.assign(run.positions.begin() + static_cast<std::ptrdiff_t>(half),
                              run.positions.begin() + static_cast<std::ptrdiff_t>(2 * half));
    return t;
}

}  // namespace twins
