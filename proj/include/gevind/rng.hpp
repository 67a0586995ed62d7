#pragma once

#include <cstdint>
#include <random>

namespace gevind {

/// splitmix64 finalizer; used to derive independent engine seeds from
/// (user seed, stream index) so results never depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream = 0) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(stream)));
}

/// Uniform double in [0, 1) from the top 53 bits. Hand-rolled so outputs
/// are identical across standard libraries (uniform_real_distribution is
/// implementation-defined).
inline double uniform01(std::mt19937_64& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n) via 128-bit multiply-shift (deterministic,
/// bias < 2^-64).
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(eng()) * n) >> 64);
}

}  // namespace gevind
