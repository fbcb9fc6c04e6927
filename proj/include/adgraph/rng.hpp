#pragma once

// SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter passed through a
// bijective mixing function.  Streams are derived from (seed, stream name) so
// each sampled suite draws an independent, reproducible sequence.

#include <cstdint>
#include <limits>
#include <string_view>

namespace adg {

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = default_seed) : state_(seed) {}

    static constexpr std::uint64_t default_seed = 0xC0FFEE;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        return mix(z);
    }

    /// Uniform integer in [0, bound); bound > 0.  Rejection sampling keeps the
    /// result identical on every platform.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = max() - max() % bound;
        for (;;) {
            const std::uint64_t x = (*this)();
            if (x < limit) return x % bound;
        }
    }

    /// Independent generator for a named sub-stream.
    SplitMix64 split(std::string_view stream) const {
        std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a over the name
        for (unsigned char c : stream) {
            h ^= c;
            h *= 0x100000001B3ull;
        }
        return SplitMix64(mix(state_ ^ mix(h)));
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

}  // namespace adg
