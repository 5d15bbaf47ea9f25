#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace topsel {

// All randomness in the library flows through the two helpers below so that
// a run is a pure function of its seeds on every platform. The generator is
// std::mt19937_64 (whose output sequence the standard pins down); doubles are
// taken from the top 53 bits directly instead of going through
// std::uniform_real_distribution, whose algorithm is implementation-defined.

/// SplitMix64 step; also used to mix seed material.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// FNV-1a over a byte string, for folding labels into seeds.
constexpr std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : text) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

/// Derives a child seed from a base seed and a textual tag (date, symbol,
/// run index rendered as text). Deterministic and order-sensitive.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::string_view tag) {
    std::uint64_t state = base ^ fnv1a64(tag);
    splitmix64(state);
    return splitmix64(state);
}

/// Uniform draw on [0, 1) from the top 53 bits of the generator.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform draw on [-1, 1].
inline double uniform_pm1(std::mt19937_64& gen) {
    return 2.0 * uniform01(gen) - 1.0;
}

} // namespace topsel
