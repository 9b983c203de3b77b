#pragma once

#include <cstdint>
#include <limits>

namespace tsloss {

// Finalizer of the SplitMix64 generator (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// xoshiro256++ (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    constexpr Xoshiro256pp(std::uint64_t s0, std::uint64_t s1, std::uint64_t s2,
                           std::uint64_t s3) noexcept
        : s_{s0, s1, s2, s3}
    {
        if ((s0 | s1 | s2 | s3) == 0) s_[0] = kGoldenGamma;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    friend constexpr bool operator==(const Xoshiro256pp&, const Xoshiro256pp&) = default;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

using Rng = Xoshiro256pp;

/// Independent stream number `index` under master `seed`.
///
/// The seed defines one SplitMix64 sequence whose n-th output is
/// mix64(mix64(seed) + (n + 1) * gamma). Stream i is a xoshiro256++ state
/// built from outputs 4i .. 4i+3, so distinct streams never share seeding
/// material and stream i can be constructed without visiting streams < i.
constexpr Rng substream(std::uint64_t seed, std::uint64_t index) noexcept
{
    const std::uint64_t base = mix64(seed);
    const std::uint64_t n = 4 * index;
    return Rng(mix64(base + (n + 1) * kGoldenGamma), mix64(base + (n + 2) * kGoldenGamma),
               mix64(base + (n + 3) * kGoldenGamma), mix64(base + (n + 4) * kGoldenGamma));
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) noexcept
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double prob) noexcept
{
    return uniform01(rng) < prob;
}

}  // namespace tsloss
