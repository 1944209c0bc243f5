#ifndef SU2GAP_RANDOM_HPP
#define SU2GAP_RANDOM_HPP

#include <cstdint>
#include <random>

namespace su2gap {

/// SplitMix64 finalizer; used to derive independent stream keys.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Seedable, splittable random stream.
 *
 * A stream is keyed by (seed, stream id). The engine is mt19937_64, whose
 * output sequence is fixed by the standard, and uniform doubles are formed
 * from the top 53 bits, so a given key yields the same values on every
 * conforming platform.
 */
class RandomStream {
public:
    using result_type = std::uint64_t;

    explicit RandomStream(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), engine_(mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL)))
    {
    }

    /// Independent child stream; children of the same parent with distinct
    /// indices never share a key.
    [[nodiscard]] RandomStream split(std::uint64_t index) const
    {
        return RandomStream(mix64(seed_ ^ mix64(stream_)), index);
    }

    result_type operator()() { return engine_(); }
    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n)
    {
        // reject the short tail so every residue is equally likely
        const std::uint64_t limit = max() - max() % n;
        std::uint64_t r;
        do {
            r = engine_();
        } while (r >= limit);
        return r % n;
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

} // namespace su2gap

#endif // SU2GAP_RANDOM_HPP
