// SPDX-License-Identifier: Apache-2.0
//! \file rng.hpp
//! Deterministic random streams: splitmix64 seeding + xoshiro256++.
//!
//! Monte Carlo paths derive one independent stream per output node from
//! (seed, node index), so results do not depend on how work is scheduled
//! across threads. Both generators are the standard public-domain algorithms
//! by Blackman and Vigna.
#pragma once

#include <cmath>
#include <cstdint>

namespace kinetica {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
  public:
    /// Stream `stream_id` of the family identified by `seed`.
    explicit Rng(std::uint64_t seed, std::uint64_t stream_id = 0) {
        std::uint64_t sm = seed ^ (0xD1B54A32D192ED03ull * (stream_id + 1));
        for (auto& word : s_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (no cached spare; keeps streams simple).
    double normal();

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t s_[4];
};

inline double Rng::normal() {
    // Box-Muller; reject u1 == 0 so the log is finite.
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(6.283185307179586476925286766559 * u2);
}

}  // namespace kinetica
