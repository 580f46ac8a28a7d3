#include "levywn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <vector>

namespace levywn {

void MomentAccumulator::add(double x) {
    const double n1 = static_cast<double>(n_);
    ++n_;
    const double n = static_cast<double>(n_);
    const double delta = x - mean_;
    const double delta_n = delta / n;
    const double delta_n2 = delta_n * delta_n;
    const double term1 = delta * delta_n * n1;
    mean_ += delta_n;
    m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
    m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
    m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
    if (other.n_ == 0) return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_), nb = static_cast<double>(other.n_);
    const double n = na + nb;
    const double delta = other.mean_ - mean_;
    const double d2 = delta * delta;

    const double m2 = m2_ + other.m2_ + d2 * na * nb / n;
    const double m3 = m3_ + other.m3_ + d2 * delta * na * nb * (na - nb) / (n * n) +
                      3.0 * delta * (na * other.m2_ - nb * m2_) / n;
    const double m4 = m4_ + other.m4_ +
                      d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                      6.0 * d2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                      4.0 * delta * (na * other.m3_ - nb * m3_) / n;

    mean_ += delta * nb / n;
    m2_ = m2;
    m3_ = m3;
    m4_ = m4;
    n_ += other.n_;
}

double MomentAccumulator::variance() const {
    return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double MomentAccumulator::fourth_moment() const {
    return n_ > 0 ? m4_ / static_cast<double>(n_) : 0.0;
}

double MomentAccumulator::mean_se() const {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

double MomentAccumulator::variance_se() const {
    if (n_ < 2) return 0.0;
    const double v = m2_ / static_cast<double>(n_);
    const double spread = std::max(fourth_moment() - v * v, 0.0);
    return std::sqrt(spread / static_cast<double>(n_));
}

unsigned thread_count() {
    if (const char* env = std::getenv("LEVYWN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

void for_each_chunk(std::size_t n,
                    const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    const unsigned threads = std::min<unsigned>(thread_count(), std::max<std::size_t>(chunks, 1));

    if (threads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            fn(c, c * kChunk, std::min(n, (c + 1) * kChunk));
        }
        return;
    }
    std::vector<std::future<void>> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.push_back(std::async(std::launch::async, [&, t]() {
            for (std::size_t c = t; c < chunks; c += threads) {
                fn(c, c * kChunk, std::min(n, (c + 1) * kChunk));
            }
        }));
    }
    for (auto& w : workers) w.get();
}

}  // namespace levywn
