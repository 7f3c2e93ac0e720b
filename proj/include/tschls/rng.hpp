#pragma once

#include <cmath>
#include <cstdint>

namespace tschls {

/// SplitMix64: tiny, portable, and bit-reproducible across platforms, which
/// std::random distributions are not. Traffic and channel draws come from
/// independent substreams of the scenario seed so that changing one knob
/// never perturbs the other stream.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53 bits of entropy.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_double() < p; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    double exponential(double mean) { return -mean * std::log1p(-next_double()); }

  private:
    std::uint64_t state_;
};

/// Decorrelated substream of a master seed.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream_id) {
    SplitMix64 mixer(seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
    mixer.next_u64();
    return mixer;
}

}  // namespace tschls
