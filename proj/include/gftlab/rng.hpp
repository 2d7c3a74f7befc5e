// Copyright 2026 The gft-lab Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace gftlab {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Identifies one independent random stream: a master seed plus up to two
/// counters (for example the augmentation size c and the trial index).
/// Streams with different keys are statistically independent and the mapping
/// does not depend on how trials are scheduled across workers.
struct StreamKey {
    std::uint64_t seed = 0;
    std::uint64_t tag = 0;
    std::uint64_t index = 0;
};

/// xoshiro256** seeded from a StreamKey. Satisfies UniformRandomBitGenerator.
class StreamRng {
public:
    using result_type = std::uint64_t;

    explicit StreamRng(StreamKey key) noexcept
    {
        std::uint64_t h = mix64(key.seed);
        h = mix64(h ^ mix64(key.tag + 0x632be59bd9b4e019ULL));
        h = mix64(h ^ mix64(key.index + 0x8cb92ba72f3d8dd7ULL));
        for (auto& word : state_) {
            h += 0x9e3779b97f4a7c15ULL;
            word = mix64(h);
        }
    }

    explicit StreamRng(std::uint64_t seed) noexcept : StreamRng(StreamKey{seed, 0, 0}) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double strictly inside (0, 1); an exact 0 is redrawn.
    double uniform_open() noexcept
    {
        for (;;) {
            const double u = static_cast<double>((*this)() >> 11) * 0x1.0p-53;
            if (u > 0.0) return u;
        }
    }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's nearly-divisionless method).
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept
    {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

}  // namespace gftlab
