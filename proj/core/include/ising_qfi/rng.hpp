#pragma once

#include <cstdint>

namespace ising_qfi {

/// SplitMix64 stream. Chosen over <random> engines so that seeded runs are
/// reproducible bit-for-bit independent of the standard library.
struct SplitMix64 {
    std::uint64_t state = 0;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Counter-based substream for one restart: depends only on (seed, index), so
/// restarts may run in any order or in parallel without changing their draws.
inline SplitMix64 restart_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64{seed ^ ((index + 1) * 0x9E3779B97F4A7C15ull)};
}

}  // namespace ising_qfi
