#pragma once

// Counter-based deterministic random streams. A draw is a pure function of
// (seed, stream, counter), so generation split across threads reproduces the
// serial result bit for bit.

#include <cmath>
#include <cstdint>
#include <numbers>

#include "hsframe/operator_core.hpp"

namespace hsframe {

/// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed for a named child stream; used to give each trial / frame index its own key.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) noexcept {
    return mix64(seed ^ mix64(tag + 0x632be59bd9b4e019ULL));
}

class RandomStream {
public:
    constexpr RandomStream(std::uint64_t seed, std::uint64_t stream) noexcept : key_(mix64(mix64(seed) ^ stream)) {}

    /// The value at an explicit counter position; does not advance the stream.
    constexpr std::uint64_t at(std::uint64_t counter) const noexcept { return mix64(key_ ^ mix64(counter)); }

    std::uint64_t next_u64() noexcept { return at(counter_++); }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard real normal (Box-Muller, cosine branch).
    double normal() noexcept {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Complex normal with independent N(0, 1/2) real and imaginary parts.
    Complex complex_normal() noexcept {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u1) * sqrt(1/2)
        const double t = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

    ComplexMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols) {
        ComplexMatrix m(rows, cols);
        for (Eigen::Index c = 0; c < cols; ++c) {
            for (Eigen::Index r = 0; r < rows; ++r) {
                m(r, c) = complex_normal();
            }
        }
        return m;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace hsframe
