#pragma once

#include <cstdint>

// counter-based uniform randomness: every draw is keyed by explicit indices
// (seed, stream, try, position), so results are reproducible regardless of
// evaluation order, chunking, or simd backend

namespace qbox {

inline constexpr std::uint64_t rng_gamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t rng_key(std::uint64_t seed) { return mix64(seed + rng_gamma); }

// derive a child key for index idx under a parent key
inline std::uint64_t rng_sub(std::uint64_t key, std::uint64_t idx) {
    return mix64(key + rng_gamma * (idx + 1));
}

// uniform in (0,1): 52 random bits centered in the cell, never 0 or 1
inline double u01(std::uint64_t bits) {
    return (double(bits >> 12) + 0.5) * 0x1p-52;
}

}  // namespace qbox
