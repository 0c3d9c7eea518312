#pragma once

#include <cstdint>

namespace snsim {

/// splitmix64 finalizer (Steele, Lea & Flood 2014). Full-avalanche mix of a
/// 64-bit word; every output bit depends on every input bit.
inline std::uint64_t avalanche64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Derived seed for one sweep cell: avalanche of (base_seed, index).
/// Fixed for reproducibility; sweep replicate i uses mix_seed(base, i).
inline std::uint64_t mix_seed(std::uint64_t base_seed, std::uint64_t index) {
    return avalanche64(base_seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

/// Deterministic random stream (splitmix64 generator). Self-contained so
/// that runs are bit-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return avalanche64(state_);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// One Bernoulli(p) draw; always consumes exactly one word.
    bool bernoulli(double p) { return next_unit() < p; }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        // modulo bias is irrelevant at simulation scales (bound << 2^64)
        return next_u64() % bound;
    }

private:
    std::uint64_t state_;
};

} // namespace snsim
