#include "twins/exact.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "twins/monotone.hpp"

namespace twins {

namespace {

struct NodeLimitHit {};

class TargetSearch {
public:
    TargetSearch(std::span<const Value> values, std::size_t target, std::uint64_t node_limit, std::uint64_t& nodes)
        : vals_(values), target_(target), node_limit_(node_limit), nodes_(nodes) {}

    bool run() { return dfs(0); }

    PositionSubsequence first() const { return to_positions(a_); }
    PositionSubsequence second() const { return to_positions(b_); }

private:
    static PositionSubsequence to_positions(const std::vector<std::size_t>& idx) {
        PositionSubsequence s;
        for (auto i : idx) {
            s.positions.push_back(i + 1);
        }
        return s;
    }

    // Can value index `cand` extend `mine` given the partner `other`?
    bool consistent(const std::vector<std::size_t>& mine, const std::vector<std::size_t>& other,
                    std::size_t cand) const {
        const std::size_t i = mine.size();
        if (other.size() <= i) {
            return true;  // partner not there yet; checked when it arrives
        }
        const Value v = vals_[cand];
        const Value w = vals_[other[i]];
        for (std::size_t j = 0; j < i; ++j) {
            if ((vals_[mine[j]] < v) != (vals_[other[j]] < w)) {
                return false;
            }
        }
        return true;
    }

    // Ranks of the partial values among partials + unread suffix: states
    // sharing this key extend identically.
    std::string key(std::size_t pos) const {
        std::vector<Value> pool(vals_.begin() + static_cast<std::ptrdiff_t>(pos), vals_.end());
        for (auto i : a_) {
            pool.push_back(vals_[i]);
        }
        for (auto i : b_) {
            pool.push_back(vals_[i]);
        }
        std::sort(pool.begin(), pool.end());
        auto rank = [&](std::size_t i) {
            return static_cast<char>(std::lower_bound(pool.begin(), pool.end(), vals_[i]) - pool.begin());
        };
        std::string k;
        k.push_back(static_cast<char>(pos));
        k.push_back(static_cast<char>(a_.size()));
        k.push_back(static_cast<char>(b_.size()));
        for (auto i : a_) {
            k.push_back(rank(i));
        }
        for (auto i : b_) {
            k.push_back(rank(i));
        }
        return k;
    }

    bool dfs(std::size_t pos) {
        if (++nodes_ > node_limit_) {
            throw NodeLimitHit{};
        }
        if (a_.size() == target_ && b_.size() == target_) {
            return true;
        }
        const std::size_t need = (target_ - a_.size()) + (target_ - b_.size());
        if (vals_.size() - pos < need) {
            return false;
        }
        auto k = key(pos);
        if (failed_.contains(k)) {
            return false;
        }
        if (a_.size() < target_ && consistent(a_, b_, pos)) {
            a_.push_back(pos);
            if (dfs(pos + 1)) {
                return true;
            }
            a_.pop_back();
        }
        // The first twin starts first; the swapped assignment is the same pair.
        if (b_.size() < target_ && !a_.empty() && consistent(b_, a_, pos)) {
            b_.push_back(pos);
            if (dfs(pos + 1)) {
                return true;
            }
            b_.pop_back();
        }
        if (dfs(pos + 1)) {
            return true;
        }
        failed_.insert(std::move(k));
        return false;
    }

    std::span<const Value> vals_;
    std::size_t target_;
    std::uint64_t node_limit_;
    std::uint64_t& nodes_;
    std::vector<std::size_t> a_, b_;
    std::unordered_set<std::string> failed_;
};

// Lexicographically smallest of p and its reversal/complement images.
bool is_class_representative(const std::vector<Value>& p, Value n) {
    std::vector<Value> img(p.size());
    auto smaller = [&](auto&& f) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            img[i] = f(i);
        }
        return img < p;
    };
    const std::size_t m = p.size();
    if (smaller([&](std::size_t i) { return p[m - 1 - i]; })) {
        return false;
    }
    if (smaller([&](std::size_t i) { return n + 1 - p[i]; })) {
        return false;
    }
    if (smaller([&](std::size_t i) { return n + 1 - p[m - 1 - i]; })) {
        return false;
    }
    return true;
}

}  // namespace

ExactResult exact_twins(const Permutation& p, const OracleBudget& budget) {
    if (p.size() > budget.max_length_single) {
        throw Error("exact_twins: length " + std::to_string(p.size()) + " exceeds cap " +
                    std::to_string(budget.max_length_single));
    }
    ExactResult res;
    res.twins = es_baseline_twins(p);
    const std::size_t known = res.twins.length();

    for (std::size_t target = p.size() / 2; target > known; --target) {
        TargetSearch search(p.values(), target, budget.node_limit, res.nodes);
        try {
            if (search.run()) {
                res.twins.first = search.first();
                res.twins.second = search.second();
                break;
            }
        } catch (const NodeLimitHit&) {
            res.exact = false;
            break;
        }
    }
    return res;
}

UniversalResult exact_t_of_n(std::size_t n, const OracleBudget& budget) {
    if (n > budget.max_n_universal) {
        throw Error("exact_t_of_n: n = " + std::to_string(n) + " exceeds cap " +
                    std::to_string(budget.max_n_universal));
    }
    UniversalResult out;
    std::vector<Value> perm(n);
    std::iota(perm.begin(), perm.end(), Value{1});
    out.witness = Permutation::identity(static_cast<Value>(n));
    if (n < 2) {
        return out;
    }
    out.t = n / 2;
    do {
        if (!is_class_representative(perm, static_cast<Value>(n))) {
            continue;
        }
        ++out.permutations_examined;
        Permutation p(perm, static_cast<Value>(n));
        auto res = exact_twins(p, budget);
        if (!res.exact) {
            throw BudgetExceeded("exact_t_of_n: node limit hit while solving a permutation of [" +
                                 std::to_string(n) + "]");
        }
        if (res.twins.length() < out.t) {
            out.t = res.twins.length();
            out.witness = p;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace twins
