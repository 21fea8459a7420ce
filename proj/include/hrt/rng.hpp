#pragma once

#include <cstdint>
#include <random>

namespace hrt {

/// Seeded generator with rejection sampling; the draw sequence depends only
/// on the seed, not on the platform's distribution implementations.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % n);
        std::uint64_t x;
        do {
            x = engine();
        } while (x >= limit);
        return x % n;
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }
};

}  // namespace hrt
