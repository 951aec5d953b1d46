#pragma once

#include <cstdint>

namespace hypercolor
{
    /// Stateless keyed generator: every draw is a pure function of its key, so results
    /// do not depend on which worker draws them or in what order.
    enum class Stream : std::uint64_t
    {
        activation = 1,
        eta = 2,
        survival_mc = 3,
        finisher = 4,
        generator = 5
    };

    inline auto mix64(std::uint64_t z) -> std::uint64_t
    {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    struct CounterKey
    {
        std::uint64_t seed = 0;
        std::uint64_t iteration = 0;
        Stream stream = Stream::activation;
        std::uint64_t vertex = 0;
        std::uint64_t color = 0;
    };

    inline auto draw_bits(const CounterKey & k, std::uint64_t counter = 0) -> std::uint64_t
    {
        auto h = mix64(k.seed);
        h = mix64(h ^ k.iteration);
        h = mix64(h ^ static_cast<std::uint64_t>(k.stream));
        h = mix64(h ^ k.vertex);
        h = mix64(h ^ k.color);
        return mix64(h ^ counter);
    }

    /// Uniform in [0,1) with 53 random bits.
    inline auto draw_uniform(const CounterKey & k, std::uint64_t counter = 0) -> double
    {
        return static_cast<double>(draw_bits(k, counter) >> 11) * 0x1.0p-53;
    }
}
