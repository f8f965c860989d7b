// =============================================================================
// rng.hpp - Seeded PRNG for deterministic Monte Carlo runs.
//
// Wraps std::mt19937_64 (whose output sequence is fully specified by the
// standard) with hand-rolled draw helpers, so that identical seeds produce
// bit-identical results on every platform. The standard <random>
// distributions are implementation-defined and are not used here.
//
// Stream splitting: replication k of a Monte Carlo run uses seed
// base_seed + k. The generator identity is recorded in output metadata.
// =============================================================================
#pragma once

#include <cstdint>
#include <random>

namespace edalab {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Unbiased integer in [0, n). Rejection sampling; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // 2^64 mod n, computed in wrapping arithmetic
        const std::uint64_t threshold = (0 - n) % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x < threshold);
        return x % n;
    }

    /// Fair coin.
    bool coin() { return (gen_() >> 63) != 0; }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

/// Recorded in output metadata so runs can be reproduced bit-identically.
inline constexpr const char* kGeneratorName = "std::mt19937_64";

}  // namespace edalab
