#pragma once

#include <cstdint>
#include <random>

namespace levywn {

/// Deterministic random source.  The engine (std::mt19937_64) and all
/// variate transformations here are fully specified, so a seed reproduces
/// the same stream on any platform.  split() derives statistically
/// independent substreams, which makes replicated sampling order-free.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }

    /// Independent substream for replicate `stream`.
    RandomSource split(std::uint64_t stream) const;

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0,1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform on (0,1); never returns an exact endpoint.
    double uniform01_open() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Exact Poisson variate via unit-rate arrival counting; valid for any
    /// lambda >= 0 (cost is O(lambda) uniforms).
    std::uint64_t poisson(double lambda);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

/// SplitMix64 mixing step, used for substream seed derivation.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace levywn
