#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qptfs {

// Stateless splitmix64 finalizer; draws are keyed by (seed, stream, index) so
// any subset of an ensemble can be regenerated in any order.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

// Uniform on (0, 1).
inline double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return (static_cast<double>(counter_hash(seed, stream, index) >> 11) + 0.5) * 0x1.0p-53;
}

// Standard normal pair by Box-Muller from draws (2 * index, 2 * index + 1).
struct NormalPair {
    double first;
    double second;
};

inline NormalPair counter_normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    const double u1 = counter_uniform(seed, stream, 2 * index);
    const double u2 = counter_uniform(seed, stream, 2 * index + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

}  // namespace qptfs
