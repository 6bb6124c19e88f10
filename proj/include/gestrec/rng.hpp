#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gestrec {

/// SplitMix64 mixing step (Steele, Lea & Flood 2014). Fully specified,
/// platform independent, and cheap to seed, which is what the dataset
/// generator needs for per-sample substreams.
constexpr std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream seed from (seed, a, b). Identical inputs
/// always give identical streams, so samples can be generated in any order
/// or in parallel without changing the output.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    s ^= a * 0xD1B54A32D192ED03ULL;
    h ^= splitmix64(s);
    s ^= b * 0x8CB92BA72F3D8DD7ULL;
    h ^= splitmix64(s);
    return h;
}

/// Deterministic 64-bit generator. The gaussian draw uses Box-Muller on two
/// uniforms instead of std::normal_distribution, whose output sequence is
/// implementation defined.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal deviate. The second Box-Muller value is discarded so
    /// each call consumes exactly two uniforms.
    double gaussian() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

}  // namespace gestrec
