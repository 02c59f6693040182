#pragma once

#include <cstdint>

namespace qdwg {

/// Minimal PCG32 (O'Neill). One independent stream per (seed, sequence)
/// pair: the tracer derives a stream per ray as (master_seed, ray_index),
/// which makes results independent of worker count and scheduling.
class Pcg32 {
public:
    Pcg32(std::uint64_t seed, std::uint64_t sequence) {
        state_ = 0u;
        inc_ = (sequence << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const std::uint32_t xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const std::uint32_t rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((32u - rot) & 31u));
    }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() {
        const std::uint64_t a = next_u32();
        const std::uint64_t b = next_u32();
        return static_cast<double>(((a << 32) | b) >> 11) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

}  // namespace qdwg
