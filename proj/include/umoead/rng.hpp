#pragma once

#include <cstdint>
#include <random>

namespace umoead::rng {

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent stream keyed by (seed, tag, a, b). Substreams let candidate
// generation run in any order (or in parallel) while visiting the same
// random numbers as a sequential pass.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t tag,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
    std::uint64_t s = splitmix64(seed);
    s = splitmix64(s ^ tag);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    return std::mt19937_64(s);
}

}  // namespace umoead::rng
