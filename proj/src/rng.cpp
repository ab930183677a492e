#include "polisim/rng.h"

#include <cassert>
#include <cmath>
#include <limits>

namespace polisim
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::int64_t RngStream::uniform_int(std::int64_t a, std::int64_t b)
{
    assert(a <= b);
    const auto range = static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(a);
    if (range == std::numeric_limits<std::uint64_t>::max()) {
        return static_cast<std::int64_t>(next_u64());
    }
    const std::uint64_t span = range + 1;
    // reject the top partial bucket so every residue is equally likely
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) + x % span);
}

RngStream derive_run_stream(std::uint64_t base_seed, std::uint64_t run_index)
{
    return RngStream(splitmix64(splitmix64(base_seed) ^ splitmix64(~run_index)));
}

std::size_t fraction_count(std::size_t n, double share)
{
    if (share <= 0.0) {
        return 0;
    }
    if (share >= 1.0) {
        return n;
    }
    // default floating-point environment rounds to nearest, ties to even
    auto k = static_cast<std::size_t>(std::nearbyint(share * static_cast<double>(n)));
    return k > n ? n : k;
}

} // namespace polisim
