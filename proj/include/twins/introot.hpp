#ifndef TWINS_INTROOT_HPP
#define TWINS_INTROOT_HPP

#include <cstdint>
#include <stdexcept>

// Exact floor/ceiling of rational powers of integers, computed in
// unsigned __int128. Radicands must stay below 2^120.

namespace twins::introot {

using u128 = unsigned __int128;

inline u128 ipow(u128 base, unsigned exp) {
    u128 r = 1;
    while (exp--) {
        r *= base;
    }
    return r;
}

/// Largest x with x^k <= a.
inline std::uint64_t floor_root(u128 a, unsigned k) {
    if (k == 0) {
        throw std::invalid_argument("floor_root: k = 0");
    }
    if (a < 2 || k == 1) {
        return static_cast<std::uint64_t>(a);
    }
    // x^k <= a < 2^128 implies x < 2^(128/k + 1).
    std::uint64_t hi = 1;
    while (hi < (std::uint64_t{1} << 62) && ipow(hi, k) <= a) {
        hi <<= 1;
    }
    std::uint64_t lo = hi >> 1;  // lo^k <= a < hi^k
    while (hi - lo > 1) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (ipow(mid, k) <= a) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

/// Smallest x with x^k >= a.
inline std::uint64_t ceil_root(u128 a, unsigned k) {
    std::uint64_t f = floor_root(a, k);
    return ipow(f, k) == a ? f : f + 1;
}

/// floor(c * n^(num/den)) = floor((c^den * n^num)^(1/den)).
inline std::uint64_t floor_scaled_power(std::uint64_t c, std::uint64_t n, unsigned num, unsigned den) {
    return floor_root(ipow(c, den) * ipow(n, num), den);
}

/// ceil(c * n^(num/den)).
inline std::uint64_t ceil_scaled_power(std::uint64_t c, std::uint64_t n, unsigned num, unsigned den) {
    return ceil_root(ipow(c, den) * ipow(n, num), den);
}

/// floor(n^(num/den) / c): largest x with (c x)^den <= n^num.
inline std::uint64_t floor_power_over(std::uint64_t n, unsigned num, unsigned den, std::uint64_t c) {
    return floor_root(ipow(n, num), den) / c;
}

/// ceil(n^(num/den) / c): smallest x with (c x)^den >= n^num.
inline std::uint64_t ceil_power_over(std::uint64_t n, unsigned num, unsigned den, std::uint64_t c) {
    const u128 target = ipow(n, num);
    std::uint64_t x = floor_root(target, den) / c;
    while (ipow(u128{c} * x, den) < target) {
        ++x;
    }
    return x;
}

}  // namespace twins::introot

#endif
