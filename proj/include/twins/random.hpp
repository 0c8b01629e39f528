#ifndef TWINS_RANDOM_HPP
#define TWINS_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace twins {

// Seeding contract
// ----------------
// Every random draw in the toolkit comes from std::mt19937_64 seeded with a
// 64-bit value. Sweep cells derive their seed as
//
//     mix_seed(master, algo_id(name), n, index)
//       = sm(sm(sm(sm(master) ^ algo_id) ^ n) ^ index)
//
// where sm is the SplitMix64 finalizer and algo_id is 64-bit FNV-1a of the
// algorithm name. A cell's seed depends only on its own coordinates, so
// adding algorithms or sizes to a sweep leaves existing cells untouched.

using Rng = std::mt19937_64;

/// SplitMix64 output function applied to x + golden gamma.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t mix_seed(std::uint64_t master, std::uint64_t algo_id, std::uint64_t n, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(splitmix64(master) ^ algo_id) ^ n) ^ index);
}

/// Unbiased draw from [0, bound) by Lemire's multiply-and-reject; bound > 0.
/// Spelled out (rather than std::uniform_int_distribution) so shuffles are
/// identical across standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) from the top 53 bits.
double uniform_unit(Rng& rng);

}  // namespace twins

#endif
