#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "twins/introot.hpp"
#include "twins/permutation.hpp"
#include "twins/text_io.hpp"

using namespace twins;

namespace {

// Positions (1-based) of the given values in p.
PositionSubsequence positions_of(const Permutation& p, std::initializer_list<Value> vals) {
    PositionSubsequence s;
    for (Value v : vals) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p.values()[i] == v) {
                s.positions.push_back(i + 1);
            }
        }
    }
    return s;
}

const Permutation fixture_host = Permutation::from_values({1, 3, 5, 6, 4, 2});

}  // namespace

TEST_CASE("permutation construction validates") {
    CHECK_NOTHROW(Permutation({3, 1, 2}, 3));
    CHECK_NOTHROW(Permutation({7, 2}, 9));
    CHECK_THROWS_AS(Permutation({1, 1}, 3), InvalidPermutation);
    CHECK_THROWS_AS(Permutation({0, 1}, 3), InvalidPermutation);
    CHECK_THROWS_AS(Permutation({4}, 3), InvalidPermutation);
    CHECK_THROWS_AS(Permutation({1, 2, 3}, 2), InvalidPermutation);
}

TEST_CASE("sparse permutation with huge bound uses hash check") {
    CHECK_NOTHROW(Permutation({5, 999999, 3}, 1000000));
    CHECK_THROWS_AS(Permutation({5, 999999, 5}, 1000000), InvalidPermutation);
    CHECK(Permutation::from_values({}).ground_bound() == 0);
}

TEST_CASE("order_isomorphic examples") {
    CHECK(order_isomorphic(std::vector<Value>{1, 5, 6, 2}, std::vector<Value>{1, 3, 4, 2}));
    CHECK(order_isomorphic(std::vector<Value>{42}, std::vector<Value>{7}));
    CHECK_FALSE(order_isomorphic(std::vector<Value>{1, 2}, std::vector<Value>{2, 1}));
    CHECK_THROWS_AS(order_isomorphic(std::vector<Value>{1, 2}, std::vector<Value>{1}), LengthMismatch);
    CHECK_THROWS_AS(order_isomorphic(std::vector<Value>{1, 1}, std::vector<Value>{1, 2}), DuplicateValue);
}

TEST_CASE("pattern_of examples") {
    CHECK(pattern_of(std::vector<Value>{1, 5, 6, 2}) == std::vector<Value>{1, 3, 4, 2});
    CHECK(pattern_of(std::vector<Value>{1, 2, 3, 4, 5}) == std::vector<Value>{1, 2, 3, 4, 5});
    CHECK(pattern_of(std::vector<Value>{13, 5, 642}) == std::vector<Value>{2, 1, 3});
    CHECK_THROWS_AS(pattern_of(std::vector<Value>{3, 3}), DuplicateValue);
}

TEST_CASE("order isomorphism properties on random sequences") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t len = 1 + rng() % 9;
        auto draw = [&] {
            auto v = oracle::random_permutation(3 * len, rng);
            v.resize(len);
            return v;
        };
        auto x = draw(), y = draw(), z = draw();
        CHECK(order_isomorphic(x, pattern_of(x)));
        CHECK(order_isomorphic(x, x));
        CHECK(order_isomorphic(x, y) == oracle::order_isomorphic(x, y));
        CHECK(order_isomorphic(x, y) == order_isomorphic(y, x));
        // transitivity through a relabelled copy of x
        auto x2 = x;
        for (auto& v : x2) {
            v = 3 * v + 1;
        }
        if (order_isomorphic(x2, z)) {
            CHECK(order_isomorphic(x, z));
        }
        if (order_isomorphic(x, y) && order_isomorphic(y, z)) {
            CHECK(order_isomorphic(x, z));
        }
    }
}

TEST_CASE("verify_twins on the 135642 fixture") {
    TwinPair t{fixture_host, positions_of(fixture_host, {1, 5, 2}), positions_of(fixture_host, {3, 6, 4}), {}};
    CHECK(verify_twins(t).valid);
    CHECK(t.length() == 3);

    TwinPair empty{fixture_host, {}, {}, {}};
    CHECK(verify_twins(empty).valid);

    TwinPair updown{fixture_host, positions_of(fixture_host, {1, 5}), positions_of(fixture_host, {6, 4}), {}};
    auto v = verify_twins(updown);
    CHECK_FALSE(v.valid);
    CHECK(v.diagnostic.find("order isomorphism") != std::string::npos);
}

TEST_CASE("verify_twins diagnostics name the violated invariant") {
    auto diag = [](TwinPair t) { return verify_twins(t).diagnostic; };
    CHECK(diag({fixture_host, {{1, 2}}, {{3}}, {}}).find("length mismatch") != std::string::npos);
    CHECK(diag({fixture_host, {{3, 1}}, {{4, 5}}, {}}).find("positions not increasing") != std::string::npos);
    CHECK(diag({fixture_host, {{1, 2}}, {{2, 3}}, {}}).find("symbol disjointness") != std::string::npos);
    // (1,3) vs (5,6), both increasing, gaps 4 and 3
    CHECK(verify_twins({fixture_host, {{1, 2}}, {{3, 4}}, Value{4}}).valid);
    CHECK(diag({fixture_host, {{1, 2}}, {{3, 4}}, Value{3}}).find("closeness") != std::string::npos);
    CHECK_THROWS_AS(verify_twins({fixture_host, {{1, 7}}, {{2, 3}}, {}}), std::out_of_range);
    CHECK_THROWS_AS(verify_twins({fixture_host, {{0}}, {{2}}, {}}), std::out_of_range);
}

TEST_CASE("verify_twins verdict is invariant under increasing relabelling") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t m = 2 + rng() % 10;
        auto host = oracle::random_permutation(m, rng);
        // random disjoint equal-size position sets
        std::vector<Position> idx(m);
        for (std::size_t i = 0; i < m; ++i) {
            idx[i] = i + 1;
        }
        std::shuffle(idx.begin(), idx.end(), rng);
        const std::size_t len = rng() % (m / 2 + 1);
        std::vector<Position> a(idx.begin(), idx.begin() + len), b(idx.begin() + len, idx.begin() + 2 * len);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());

        // strictly increasing map v -> v + cumulative random gaps
        std::vector<Value> shift(m + 1, 0);
        for (std::size_t v = 1; v <= m; ++v) {
            shift[v] = shift[v - 1] + 1 + static_cast<Value>(rng() % 5);
        }
        auto mapped = host;
        for (auto& v : mapped) {
            v = shift[static_cast<std::size_t>(v)];
        }
        TwinPair t1{Permutation::from_values(host), {a}, {b}, {}};
        TwinPair t2{Permutation::from_values(mapped), {a}, {b}, {}};
        CHECK(verify_twins(t1).valid == verify_twins(t2).valid);
    }
}

TEST_CASE("restrict") {
    auto r = restrict_values(fixture_host, [](Value v) { return v == 1 || v == 5 || v == 6 || v == 2; });
    CHECK(std::vector<Value>(r.values().begin(), r.values().end()) == std::vector<Value>{1, 5, 6, 2});
    CHECK(r.ground_bound() == 6);
    CHECK(restrict_values(fixture_host, [](Value) { return true; }) == fixture_host);
    CHECK(restrict_values(fixture_host, [](Value) { return false; }).empty());

    std::vector<Position> keep{2, 4, 5};
    auto rp = restrict_positions(fixture_host, keep);
    CHECK(std::vector<Value>(rp.values().begin(), rp.values().end()) == std::vector<Value>{3, 6, 4});
}

TEST_CASE("restrict then restrict equals restrict by intersection") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t m = rng() % 30;
        auto p = Permutation::from_values(oracle::random_permutation(m, rng));
        const std::uint64_t s1 = rng(), s2 = rng();
        auto in1 = [s1](Value v) { return (s1 >> (v % 64)) & 1u; };
        auto in2 = [s2](Value v) { return (s2 >> (v % 64)) & 1u; };
        auto twice = restrict_values(restrict_values(p, in1), in2);
        auto once = restrict_values(p, [&](Value v) { return in1(v) && in2(v); });
        CHECK(twice == once);
    }
}

TEST_CASE("integer roots") {
    using namespace twins::introot;
    CHECK(floor_root(0, 5) == 0);
    CHECK(floor_root(31, 5) == 1);
    CHECK(floor_root(32, 5) == 2);
    CHECK(ceil_root(33, 5) == 3);
    CHECK(ceil_root(32, 5) == 2);
    // n = 10^5: n^(3/5) = 1000, n^(2/5) = 100, n^(1/5) = 10 exactly
    CHECK(ceil_scaled_power(2, 100000, 3, 5) == 2000);
    CHECK(floor_root(ipow(100000, 2), 5) == 100);
    CHECK(ceil_root(100000, 5) == 10);
    CHECK(floor_power_over(100000, 2, 5, 7) == 14);
    CHECK(ceil_power_over(1000000, 2, 3, 80) == 125);
    CHECK(ceil_power_over(1000001, 2, 3, 80) == 126);
    std::mt19937_64 rng(1);
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t n = rng() % 100000000 + 1;
        const unsigned k = 2 + static_cast<unsigned>(rng() % 5);
        const auto f = floor_root(n, k);
        CHECK(ipow(f, k) <= n);
        CHECK(ipow(f + 1, k) > n);
    }
}

TEST_CASE("permutation text round trip") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        auto v = oracle::random_permutation(rng() % 60, rng);
        const Value bound = static_cast<Value>(v.size() + rng() % 5);
        Permutation p(v, bound);
        std::stringstream ss;
        write_permutation(ss, p);
        CHECK(read_permutation(ss) == p);
    }
    std::stringstream no_header("3 1\n2\n");
    auto p = read_permutation(no_header);
    CHECK(p.ground_bound() == 3);
    std::stringstream bad("1 2 x\n");
    CHECK_THROWS_AS(read_permutation(bad), ParseError);
    std::stringstream dup("1 2 2\n");
    CHECK_THROWS_AS(read_permutation(dup), ParseError);
}

TEST_CASE("twin file parsing and resolution") {
    std::stringstream ss("# tau=4\nhost 1 3 5 6 4 2\nfirst 1 2\nsecond 3 4\n");
    auto f = read_twin_file(ss);
    auto t = resolve_twins(f, std::nullopt);
    CHECK(t.closeness_bound == Value{4});
    CHECK(verify_twins(t).valid);

    std::stringstream ext("host @\nfirst 1\nsecond 2\n");
    auto fe = read_twin_file(ext);
    CHECK_THROWS_AS(resolve_twins(fe, std::nullopt), ParseError);
    CHECK(resolve_twins(fe, fixture_host).host == fixture_host);

    std::stringstream missing("host 1 2\nfirst 1\n");
    CHECK_THROWS_AS(read_twin_file(missing), ParseError);

    std::stringstream out;
    write_twins(out, t);
    auto again = resolve_twins(read_twin_file(out), std::nullopt);
    CHECK(again.first == t.first);
    CHECK(again.second == t.second);
    CHECK(again.host == t.host);
    CHECK(again.closeness_bound == t.closeness_bound);
}
