#include "levywn/random.hpp"

#include <cmath>
#include <stdexcept>

namespace levywn {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RandomSource RandomSource::split(std::uint64_t stream) const {
    return RandomSource(splitmix64(splitmix64(seed_) ^ splitmix64(stream + 1)));
}

std::uint64_t RandomSource::poisson(double lambda) {
    if (lambda < 0.0 || !std::isfinite(lambda)) {
        throw std::invalid_argument("poisson: lambda must be finite and >= 0");
    }
    std::uint64_t k = 0;
    double t = -std::log(uniform01_open());
    while (t <= lambda) {
        ++k;
        t -= std::log(uniform01_open());
    }
    return k;
}

}  // namespace levywn
