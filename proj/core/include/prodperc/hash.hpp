#pragma once

#include <cstdint>

namespace prodperc {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer. Every random decision in the project goes through
// this one mixing function so runs reproduce bit-exactly across platforms
// (and across reimplementations in other languages).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Canonical splitmix64 sequence.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform double in [0,1) with 53 random bits.
    double next_u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t state_;
};

// Stateless derivation of the seed for the i-th parallel stream.
constexpr std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t i) {
    return mix64(mix64(seed + kGolden) + i);
}

}  // namespace prodperc
