#include "levywn/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace levywn {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    QuadratureRule base = gauss_legendre(n);
    const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        base.nodes[i] = mid + halfw * base.nodes[i];
        base.weights[i] *= halfw;
    }
    return base;
}

QuadratureRule composite_gauss_legendre(int n, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("composite_gauss_legendre: panels must be >= 1");
    const QuadratureRule base = gauss_legendre(n);
    QuadratureRule rule;
    rule.nodes.reserve(static_cast<std::size_t>(n) * panels);
    rule.weights.reserve(static_cast<std::size_t>(n) * panels);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h, halfw = 0.5 * h;
        for (int i = 0; i < n; ++i) {
            rule.nodes.push_back(mid + halfw * base.nodes[i]);
            rule.weights.push_back(halfw * base.weights[i]);
        }
    }
    return rule;
}

QuadratureRule gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double pim4 = std::pow(kPi, -0.25);
    const int half = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        // Stroud-Secrest style initial guesses for the descending roots.
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * rule.nodes[n - 1];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * rule.nodes[n - 2];
        } else {
            z = 2.0 * z - rule.nodes[n - i + 1];
        }
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Orthonormal Hermite recurrence (weight e^{-t^2}).
            double p1 = pim4, p2 = 0.0;
            for (int j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-14) break;
        }
        rule.nodes[n - 1 - i] = z;
        rule.nodes[i] = -z;
        const double w = 2.0 / (pp * pp);
        rule.weights[n - 1 - i] = w;
        rule.weights[i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

QuadratureRule geometric_gauss_legendre(int n, double a, double b, double first_width,
                                        double growth) {
    if (!(a < b) || first_width <= 0.0 || growth <= 1.0) {
        throw std::invalid_argument("geometric_gauss_legendre: bad panel parameters");
    }
    const QuadratureRule base = gauss_legendre(n);
    QuadratureRule rule;
    double lo = a, width = first_width;
    while (lo < b) {
        const double hi = std::min(lo + width, b);
        const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
        for (int i = 0; i < n; ++i) {
            rule.nodes.push_back(mid + halfw * base.nodes[i]);
            rule.weights.push_back(halfw * base.weights[i]);
        }
        lo = hi;
        width *= growth;
    }
    return rule;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_panels) {
    // Converge relative to the integral of |f|, so cancellation to an exact
    // zero (odd moments of symmetric measures) still terminates.
    const auto evaluate = [&](int panels) {
        const QuadratureRule rule = composite_gauss_legendre(16, a, b, panels);
        double sum = 0.0, abs_sum = 0.0;
        for (std::size_t i = 0; i < rule.size(); ++i) {
            const double v = f(rule.nodes[i]);
            sum += rule.weights[i] * v;
            abs_sum += std::abs(rule.weights[i] * v);
        }
        return std::pair{sum, abs_sum};
    };
    double prev = evaluate(1).first;
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        const auto [cur, cur_abs] = evaluate(panels);
        const double scale = std::max({std::abs(cur), cur_abs, 1e-300});
        if (std::abs(cur - prev) <= rel_tol * scale) return cur;
        prev = cur;
    }
    throw std::runtime_error("integrate_adaptive: no convergence");
}

}  // namespace levywn
