#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twins/introot.hpp"
#include "twins/monotone.hpp"

using namespace twins;

namespace {

std::vector<Value> values_of(std::span<const Value> v, const PositionSubsequence& s) {
    std::vector<Value> out;
    for (auto pos : s.positions) {
        out.push_back(v[pos - 1]);
    }
    return out;
}

bool strictly_monotone(const std::vector<Value>& v, Direction dir) {
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (dir == Direction::increasing ? v[i - 1] >= v[i] : v[i - 1] <= v[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("lis examples") {
    const std::vector<Value> p{1, 3, 5, 6, 4, 2};
    auto up = lis(p, Direction::increasing);
    CHECK(values_of(p, up) == std::vector<Value>{1, 3, 5, 6});
    auto down = lis(p, Direction::decreasing);
    CHECK(down.size() == 3);
    CHECK(strictly_monotone(values_of(p, down), Direction::decreasing));

    auto id = Permutation::identity(9);
    CHECK(lis(id).size() == 9);
    CHECK(lis(std::vector<Value>{}).empty());
}

TEST_CASE("lis matches the quadratic DP") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t m = rng() % 300;
        auto v = oracle::random_permutation(m, rng);
        for (auto dir : {Direction::increasing, Direction::decreasing}) {
            auto w = lis(v, dir);
            CHECK(w.size() == oracle::lis_length_dp(v, dir == Direction::increasing));
            CHECK(strictly_monotone(values_of(v, w), dir));
            CHECK(std::is_sorted(w.positions.begin(), w.positions.end()));
        }
    }
}

TEST_CASE("lcs_of_permutations examples") {
    auto c = lcs_of_permutations(std::vector<Value>{1, 2, 3}, std::vector<Value>{1, 3, 2});
    CHECK(c.size() == 2);
    const std::vector<Value> x{4, 1, 3, 2};
    CHECK(lcs_of_permutations(x, x) == x);
    std::vector<Value> asc(20), desc(20);
    for (int i = 0; i < 20; ++i) {
        asc[i] = i + 1;
        desc[i] = 20 - i;
    }
    CHECK(lcs_of_permutations(asc, desc).size() == 1);
    CHECK_THROWS_AS(lcs_of_permutations(std::vector<Value>{1, 2}, std::vector<Value>{1, 3}), SymbolSetMismatch);
    CHECK_THROWS_AS(lcs_of_permutations(std::vector<Value>{1, 2}, std::vector<Value>{1}), SymbolSetMismatch);
}

TEST_CASE("lcs_of_permutations matches enumeration and is symmetric") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 1500; ++trial) {
        const std::size_t m = rng() % 11;
        auto x = oracle::random_permutation(m, rng);
        auto y = oracle::random_permutation(m, rng);
        auto c = lcs_of_permutations(x, y);
        CHECK(c.size() == oracle::lcs_length_enumerate(x, y));
        CHECK(oracle::is_subsequence(c, x));
        CHECK(oracle::is_subsequence(c, y));
        CHECK(lcs_of_permutations(y, x).size() == c.size());
    }
}

TEST_CASE("bhn_select examples") {
    std::vector<Value> id(12);
    for (int i = 0; i < 12; ++i) {
        id[i] = i;
    }
    auto sel = bhn_select(id, id, id);
    CHECK(sel.first_index == 0);
    CHECK(sel.second_index == 1);
    CHECK(sel.symbols == id);

    std::vector<Value> a{1, 2, 3}, b{1, 3, 2};
    CHECK_THROWS_AS(bhn_select(a, b, std::vector<Value>{1, 2, 4}), SymbolSetMismatch);
}

TEST_CASE("bhn_select on [8] always reaches length 2") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 3000; ++trial) {
        auto c0 = oracle::random_permutation(8, rng);
        auto c1 = oracle::random_permutation(8, rng);
        auto c2 = oracle::random_permutation(8, rng);
        auto sel = bhn_select(c0, c1, c2);
        CHECK(sel.symbols.size() >= 2);
        CHECK(sel.first_index < sel.second_index);
        const std::array<const oracle::Seq*, 3> cs{&c0, &c1, &c2};
        CHECK(oracle::is_subsequence(sel.symbols, *cs[sel.first_index]));
        CHECK(oracle::is_subsequence(sel.symbols, *cs[sel.second_index]));
    }
}

TEST_CASE("bhn_select picks the longest pair, ties to the smallest index pair") {
    // c0 and c2 agree, c1 is reversed: pair (0,2) wins outright
    std::vector<Value> c0{1, 2, 3, 4, 5}, c1{5, 4, 3, 2, 1};
    auto sel = bhn_select(c0, c1, c0);
    CHECK(sel.first_index == 0);
    CHECK(sel.second_index == 2);
    CHECK(sel.symbols.size() == 5);
}

TEST_CASE("bhn_select at m = 1000 over 1000 seeds") {
    std::mt19937_64 rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
        auto sel = bhn_select(oracle::random_permutation(1000, rng), oracle::random_permutation(1000, rng),
                              oracle::random_permutation(1000, rng));
        CHECK(sel.symbols.size() >= 10);
    }
}

TEST_CASE("bhn_select on a structured block triple") {
    // c0 = identity, c1 = k blocks of k descending, c2 = blocks reversed.
    // LCS(c0,c1) = k, LCS(c0,c2) = k, LCS(c1,c2) = k for m = k^2.
    const int k = 9;
    std::vector<Value> c0, c1, c2;
    for (int i = 0; i < k * k; ++i) {
        c0.push_back(i);
    }
    for (int b = 0; b < k; ++b) {
        for (int j = k - 1; j >= 0; --j) {
            c1.push_back(b * k + j);
        }
    }
    for (int b = k - 1; b >= 0; --b) {
        for (int j = 0; j < k; ++j) {
            c2.push_back(b * k + j);
        }
    }
    auto sel = bhn_select(c0, c1, c2);
    CHECK(sel.symbols.size() == static_cast<std::size_t>(k));
    CHECK(introot::ipow(sel.symbols.size(), 3) >= c0.size());
}

TEST_CASE("es_baseline_twins examples") {
    auto id = Permutation::identity(16);
    auto t = es_baseline_twins(id);
    CHECK(t.length() == 8);
    CHECK(values_at(id, t.first) == std::vector<Value>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(values_at(id, t.second) == std::vector<Value>{9, 10, 11, 12, 13, 14, 15, 16});

    auto p = Permutation::from_values({1, 3, 5, 6, 4, 2});
    auto tp = es_baseline_twins(p);
    CHECK(tp.length() == 2);
    CHECK(values_at(p, tp.first) == std::vector<Value>{1, 3});
    CHECK(values_at(p, tp.second) == std::vector<Value>{5, 6});
    CHECK(verify_twins(tp).valid);

    CHECK(es_baseline_twins(Permutation::from_values({1})).length() == 0);
    CHECK(es_baseline_twins(Permutation{}).length() == 0);
}

TEST_CASE("es_baseline_twins prefers increasing on ties") {
    auto p = Permutation::from_values({2, 1, 3});  // LIS 2, LDS 2
    auto t = es_baseline_twins(p);
    CHECK(values_at(p, t.first).front() < values_at(p, t.second).front());
}

TEST_CASE("es_baseline_twins is valid and meets its bound") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 1 + rng() % 2000;
        auto p = Permutation::from_values(oracle::random_permutation(m, rng));
        auto t = es_baseline_twins(p);
        CHECK(verify_twins(t).valid);
        CHECK(t.length() >= es_guarantee(m));
        CHECK(static_cast<double>(t.length()) >= (std::sqrt(static_cast<double>(m)) - 1) / 2);
    }
}

TEST_CASE("es_guarantee is floor(ceil(sqrt m) / 2)") {
    CHECK(es_guarantee(1) == 0);
    CHECK(es_guarantee(4) == 1);
    CHECK(es_guarantee(5) == 1);
    CHECK(es_guarantee(10) == 2);
    CHECK(es_guarantee(16) == 2);
    CHECK(es_guarantee(17) == 2);
    CHECK(es_guarantee(26) == 3);
}
