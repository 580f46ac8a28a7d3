#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace levywn {

/// Streaming central moments up to order 4 (Pebay update formulas).
/// Supplies the standard error of both the mean and the variance estimate;
/// the latter uses Var(s^2) ~ (m4 - s^4)/n, valid without normality.
class MomentAccumulator {
public:
    void add(double x);
    void merge(const MomentAccumulator& other);

    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const;      ///< unbiased (n-1) estimate
    double fourth_moment() const; ///< central, biased (moment form)
    double mean_se() const;
    double variance_se() const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
    double m3_ = 0.0;
    double m4_ = 0.0;
};

/// Number of worker threads: the LEVYWN_THREADS environment variable when
/// set, otherwise 1.
unsigned thread_count();

/// Run fn(chunk_index, begin, end) over [0,n) split into fixed-size chunks.
/// Chunk boundaries do not depend on the thread count, so any per-chunk
/// reduction merged in chunk order is reproducible.
void for_each_chunk(std::size_t n, const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

}  // namespace levywn
