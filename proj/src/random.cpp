#include "twins/random.hpp"

namespace twins {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    using u128 = unsigned __int128;
    u128 product = u128{rng()} * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            product = u128{rng()} * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace twins
