#include "twins/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace twins {

namespace {

// Positions of x sorted by value; throws on ties.
std::vector<std::size_t> argsort_distinct(std::span<const Value> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (x[order[i - 1]] == x[order[i]]) {
            throw DuplicateValue("duplicate value " + std::to_string(x[order[i]]));
        }
    }
    return order;
}

}  // namespace

Permutation::Permutation(std::vector<Value> values, Value ground_bound)
    : values_(std::move(values)), ground_bound_(ground_bound) {
    if (ground_bound_ < 0) {
        throw InvalidPermutation("negative ground bound");
    }
    if (values_.size() > static_cast<std::size_t>(ground_bound_)) {
        throw InvalidPermutation("length " + std::to_string(values_.size()) + " exceeds ground bound " +
                                 std::to_string(ground_bound_));
    }
    for (Value v : values_) {
        if (v < 1 || v > ground_bound_) {
            throw InvalidPermutation("value " + std::to_string(v) + " outside [1, " +
                                     std::to_string(ground_bound_) + "]");
        }
    }
    // Bitmap is cheaper than sorting once the values are dense.
    if (static_cast<std::size_t>(ground_bound_) <= 8 * values_.size() + 64) {
        std::vector<bool> seen(static_cast<std::size_t>(ground_bound_) + 1, false);
        for (Value v : values_) {
            if (seen[static_cast<std::size_t>(v)]) {
                throw InvalidPermutation("duplicate value " + std::to_string(v));
            }
            seen[static_cast<std::size_t>(v)] = true;
        }
    } else {
        std::unordered_set<Value> seen(values_.begin(), values_.end());
        if (seen.size() != values_.size()) {
            throw InvalidPermutation("duplicate values");
        }
    }
}

Permutation Permutation::from_values(std::vector<Value> values) {
    Value bound = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
    return Permutation(std::move(values), bound);
}

Permutation Permutation::identity(Value n) {
    std::vector<Value> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), Value{1});
    return Permutation(Unchecked{}, std::move(v), n);
}

Value Permutation::at(Position pos) const {
    if (pos < 1 || pos > values_.size()) {
        throw std::out_of_range("position " + std::to_string(pos) + " outside [1, " +
                                std::to_string(values_.size()) + "]");
    }
    return values_[pos - 1];
}

Permutation unchecked_permutation(std::vector<Value> values, Value ground_bound) {
    return Permutation(Permutation::Unchecked{}, std::move(values), ground_bound);
}

std::vector<Value> pattern_of(std::span<const Value> x) {
    auto order = argsort_distinct(x);
    std::vector<Value> ranks(x.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        ranks[order[r]] = static_cast<Value>(r + 1);
    }
    return ranks;
}

bool order_isomorphic(std::span<const Value> x, std::span<const Value> y) {
    if (x.size() != y.size()) {
        throw LengthMismatch("order_isomorphic: lengths " + std::to_string(x.size()) + " and " +
                             std::to_string(y.size()));
    }
    return pattern_of(x) == pattern_of(y);
}

std::vector<Value> values_at(const Permutation& host, const PositionSubsequence& sub) {
    std::vector<Value> out;
    out.reserve(sub.size());
    for (Position pos : sub.positions) {
        out.push_back(host.at(pos));
    }
    return out;
}

TwinVerdict verify_twins(const TwinPair& t) {
    // Range first: malformed input is an error, not a verdict.
    const auto a = values_at(t.host, t.first);
    const auto b = values_at(t.host, t.second);

    auto fail = [](std::string why) { return TwinVerdict{false, std::move(why)}; };

    if (a.size() != b.size()) {
        return fail("length mismatch: first has " + std::to_string(a.size()) + ", second has " +
                    std::to_string(b.size()));
    }
    for (const auto* sub : {&t.first, &t.second}) {
        const auto& ps = sub->positions;
        for (std::size_t i = 1; i < ps.size(); ++i) {
            if (ps[i - 1] >= ps[i]) {
                return fail(std::string("positions not increasing in ") + (sub == &t.first ? "first" : "second") +
                            " at index " + std::to_string(i + 1));
            }
        }
    }
    std::unordered_set<Value> in_first(a.begin(), a.end());
    for (Value v : b) {
        if (in_first.contains(v)) {
            return fail("symbol disjointness violated: value " + std::to_string(v) + " in both");
        }
    }
    if (!order_isomorphic(a, b)) {
        return fail("order isomorphism violated");
    }
    if (t.closeness_bound) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            Value gap = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
            if (gap > *t.closeness_bound) {
                return fail("closeness violated at index " + std::to_string(i + 1) + ": |" + std::to_string(a[i]) +
                            " - " + std::to_string(b[i]) + "| > " + std::to_string(*t.closeness_bound));
            }
        }
    }
    return {};
}

Permutation restrict_positions(const Permutation& p, std::span<const Position> keep) {
    std::vector<bool> mask(p.size() + 1, false);
    for (Position pos : keep) {
        if (pos >= 1 && pos <= p.size()) {
            mask[pos] = true;
        }
    }
    std::vector<Value> out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (mask[i + 1]) {
            out.push_back(p.values_[i]);
        }
    }
    return Permutation(Permutation::Unchecked{}, std::move(out), p.ground_bound_);
}

Permutation restrict_values(const Permutation& p, const std::function<bool(Value)>& keep) {
    std::vector<Value> out;
    for (Value v : p.values_) {
        if (keep(v)) {
            out.push_back(v);
        }
    }
    return Permutation(Permutation::Unchecked{}, std::move(out), p.ground_bound_);
}

Permutation reversed(const Permutation& p) {
    std::vector<Value> v(p.values().rbegin(), p.values().rend());
    return unchecked_permutation(std::move(v), p.ground_bound());
}

Permutation complemented(const Permutation& p) {
    std::vector<Value> v(p.values().begin(), p.values().end());
    for (auto& x : v) {
        x = p.ground_bound() + 1 - x;
    }
    return unchecked_permutation(std::move(v), p.ground_bound());
}

}  // namespace twins
