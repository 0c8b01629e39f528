#include <algorithm>
#include <numeric>
#include <string>

#include "twins/exact.hpp"
#include "twins/grid_matching.hpp"
#include "twins/random.hpp"

namespace twins {

namespace {

// Indices (into pts) of points whose coordinate equals a neighbour's after sorting.
template <typename Get>
std::vector<std::size_t> tied(const std::vector<PlanePoint>& pts, Get get) {
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return get(pts[a]) < get(pts[b]); });
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (get(pts[order[i - 1]]) == get(pts[order[i]])) {
            out.push_back(order[i]);
        }
    }
    return out;
}

}  // namespace

PlanePointSet sample_poisson_points(double lambda, std::uint64_t seed) {
    if (!(lambda > 0)) {
        throw Error("poisson intensity must be positive");
    }
    Rng rng(seed);
    std::poisson_distribution<long long> count(lambda);
    const auto n = static_cast<std::size_t>(count(rng));
    PlanePointSet set;
    set.points.resize(n);
    for (auto& pt : set.points) {
        pt.x = uniform_unit(rng);
        pt.y = uniform_unit(rng);
    }
    for (;;) {
        auto tx = tied(set.points, [](const PlanePoint& p) { return p.x; });
        auto ty = tied(set.points, [](const PlanePoint& p) { return p.y; });
        if (tx.empty() && ty.empty()) {
            break;
        }
        for (auto i : tx) {
            set.points[i].x = uniform_unit(rng);
        }
        for (auto i : ty) {
            set.points[i].y = uniform_unit(rng);
        }
    }
    return set;
}

Permutation points_to_permutation(std::span<const PlanePoint> points) {
    std::vector<PlanePoint> by_x(points.begin(), points.end());
    std::sort(by_x.begin(), by_x.end(), [](const PlanePoint& a, const PlanePoint& b) { return a.x < b.x; });
    std::vector<std::size_t> order(by_x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return by_x[a].y < by_x[b].y; });
    std::vector<Value> ranks(by_x.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        ranks[order[r]] = static_cast<Value>(r + 1);
    }
    const auto n = static_cast<Value>(ranks.size());
    return Permutation(std::move(ranks), n);
}

Permutation sample_poisson_permutation(double lambda, std::uint64_t seed) {
    return points_to_permutation(sample_poisson_points(lambda, seed).points);
}

bool prefix_monotonicity_check(const PlanePointSet& points, std::size_t max_points) {
    if (points.points.size() > max_points) {
        throw Error("prefix_monotonicity_check: " + std::to_string(points.points.size()) +
                    " points exceed the cap of " + std::to_string(max_points));
    }
    OracleBudget budget;
    budget.max_length_single = std::max(budget.max_length_single, max_points);
    std::size_t previous = 0;
    std::span<const PlanePoint> all(points.points);
    for (std::size_t m = 1; m <= all.size(); ++m) {
        auto res = exact_twins(points_to_permutation(all.first(m)), budget);
        if (!res.exact) {
            throw Error("prefix_monotonicity_check: oracle budget exceeded at prefix " + std::to_string(m));
        }
        if (res.twins.length() < previous) {
            return false;
        }
        previous = res.twins.length();
    }
    return true;
}

}  // namespace twins
