#ifndef POLISIM_RNG_H
#define POLISIM_RNG_H

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace polisim
{

/// SplitMix64 finalizer; used to derive independent run seeds.
std::uint64_t splitmix64(std::uint64_t x);

/**
 * The single source of randomness for one simulation run.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++ standard. All conversions to
 * reals, integers and choices are implemented here rather than through <random> distributions, whose
 * algorithms are implementation-defined, so a seed reproduces the same run on every platform.
 */
class RngStream
{
public:
    static constexpr const char* algorithm = "mt19937_64+splitmix64-derivation";

    explicit RngStream(std::uint64_t seed = 5489u)
        : m_engine(seed)
    {
    }

    std::uint64_t next_u64()
    {
        ++m_draws;
        return m_engine();
    }

    /// Uniform real in [0, 1) with 53 bits of resolution.
    double uniform01()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform real in [a, b).
    double uniform_real(double a, double b)
    {
        return a + (b - a) * uniform01();
    }

    /// Uniform integer in the closed range [a, b], unbiased.
    std::int64_t uniform_int(std::int64_t a, std::int64_t b);

    /// Uniform index in [0, n). n must be positive.
    std::size_t index(std::size_t n)
    {
        return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
    }

    bool coin()
    {
        return (next_u64() >> 63) != 0;
    }

    /// Moves a uniformly random k-subset to the front of `items`, in random order (partial Fisher-Yates).
    template <class T>
    void partial_shuffle(std::span<T> items, std::size_t k)
    {
        const std::size_t n = items.size();
        if (k > n) {
            k = n;
        }
        for (std::size_t i = 0; i < k; ++i) {
            auto j = static_cast<std::size_t>(uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n) - 1));
            using std::swap;
            swap(items[i], items[j]);
        }
    }

    /// Number of 64-bit words drawn so far.
    std::uint64_t draws() const
    {
        return m_draws;
    }

private:
    std::mt19937_64 m_engine;
    std::uint64_t m_draws = 0;
};

/// Stream for run `run_index` of a batch seeded with `base_seed`. Pure in its arguments.
RngStream derive_run_stream(std::uint64_t base_seed, std::uint64_t run_index);

/// Sample size used by sample_fraction: share * n rounded half to even.
std::size_t fraction_count(std::size_t n, double share);

/// Draws fraction_count(|items|, share) distinct items uniformly without replacement, in random order.
template <class T>
std::vector<T> sample_fraction(RngStream& rng, std::span<const T> items, double share)
{
    std::vector<T> pool(items.begin(), items.end());
    const std::size_t k = fraction_count(pool.size(), share);
    rng.partial_shuffle(std::span<T>(pool), k);
    pool.resize(k);
    return pool;
}

template <class T>
std::vector<T> sample_fraction(RngStream& rng, const std::vector<T>& items, double share)
{
    return sample_fraction(rng, std::span<const T>(items), share);
}

} // namespace polisim

#endif // POLISIM_RNG_H
