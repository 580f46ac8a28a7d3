#include "levywn/hermite.hpp"

#include <cmath>
#include <stdexcept>

#include "levywn/multi_index.hpp"
#include "levywn/quadrature.hpp"

namespace levywn {

namespace {
const double kQuarticRootPiInv = std::pow(3.14159265358979323846, -0.25);
}

double hermite_fn(std::uint64_t n, double t) {
    if (n < 1) throw std::invalid_argument("hermite_fn: index is 1-based");
    double prev = 0.0;
    double cur = kQuarticRootPiInv * std::exp(-0.5 * t * t);
    for (std::uint64_t j = 1; j < n; ++j) {
        const double next =
            t * std::sqrt(2.0 / static_cast<double>(j)) * cur -
            std::sqrt(static_cast<double>(j - 1) / static_cast<double>(j)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

void hermite_fn_all(std::uint64_t nmax, double t, std::span<double> out) {
    if (nmax < 1 || out.size() < nmax) {
        throw std::invalid_argument("hermite_fn_all: bad output span");
    }
    double prev = 0.0;
    double cur = kQuarticRootPiInv * std::exp(-0.5 * t * t);
    out[0] = cur;
    for (std::uint64_t j = 1; j < nmax; ++j) {
        const double next =
            t * std::sqrt(2.0 / static_cast<double>(j)) * cur -
            std::sqrt(static_cast<double>(j - 1) / static_cast<double>(j)) * prev;
        prev = cur;
        cur = next;
        out[j] = cur;
    }
}

double tensor_hermite(std::uint64_t k, std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("tensor_hermite: empty point");
    const std::vector<unsigned> tuple = dim_tuple(x.size(), k);
    double prod = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) prod *= hermite_fn(tuple[j], x[j]);
    return prod;
}

double hermite_fn_integral(std::uint64_t n, double a, double b) {
    if (a == b) return 0.0;
    // xi_n oscillates with local wavenumber <= sqrt(2n+1); pick panels so each
    // holds at most about one oscillation period.
    const double span = std::abs(b - a);
    const int panels =
        std::max(2, static_cast<int>(span * std::sqrt(2.0 * static_cast<double>(n) + 1.0) / 4.0) + 1);
    return composite_gauss_legendre(24, a, b, panels)
        .apply([n](double t) { return hermite_fn(n, t); });
}

double tensor_hermite_box_integral(std::uint64_t k, std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("tensor_hermite_box_integral: empty point");
    const std::vector<unsigned> tuple = dim_tuple(x.size(), k);
    double prod = 1.0;
    for (std::size_t j = 0; j < x.size(); ++j) prod *= hermite_fn_integral(tuple[j], 0.0, x[j]);
    return prod;
}

}  // namespace levywn
