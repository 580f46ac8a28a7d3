#include "levywn/poisson_eq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "levywn/hermite.hpp"
#include "levywn/multi_index.hpp"
#include "levywn/quadrature.hpp"

namespace levywn {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sq(double v) { return v * v; }

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

// sin(n pi t) for n = 1..N by the Chebyshev recurrence.
void sin_multiples(double t, int N, std::span<double> out) {
    const double s1 = std::sin(kPi * t);
    const double c2 = 2.0 * std::cos(kPi * t);
    double prev = 0.0, cur = s1;
    for (int n = 1; n <= N; ++n) {
        out[n - 1] = cur;
        const double next = c2 * cur - prev;
        prev = cur;
        cur = next;
    }
}

}  // namespace

// Shared tables for the truncated eigen-series Green function: Gauss-Legendre
// panels in the auxiliary variable of 1/lambda = int_0^inf e^{-lambda t} dt,
// and the per-node decay factors e^{-pi^2 n^2 t}.
struct Domain::SeriesTables {
    int N = 0;
    std::vector<double> t_nodes;
    std::vector<double> t_weights;
    std::vector<double> exp_table;  // [ti * N + (n-1)]

    SeriesTables(std::size_t d, int N_in) : N(N_in) {
        const double lambda_min = kPi * kPi * static_cast<double>(d);
        const double lambda_max = kPi * kPi * static_cast<double>(d) * sq(static_cast<double>(N));
        const double t_max = 42.0 / lambda_min;     // e^{-42} below double noise
        const double w0 = 0.25 / lambda_max;
        const QuadratureRule base = gauss_legendre(12);
        double lo = 0.0, width = w0;
        while (lo < t_max) {
            const double hi = std::min(lo + width, t_max);
            const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
            for (std::size_t i = 0; i < base.size(); ++i) {
                t_nodes.push_back(mid + halfw * base.nodes[i]);
                t_weights.push_back(halfw * base.weights[i]);
            }
            lo = hi;
            width *= 2.0;
        }
        exp_table.resize(t_nodes.size() * N);
        for (std::size_t ti = 0; ti < t_nodes.size(); ++ti) {
            for (int n = 1; n <= N; ++n) {
                exp_table[ti * N + (n - 1)] =
                    std::exp(-kPi * kPi * static_cast<double>(n) * static_cast<double>(n) *
                             t_nodes[ti]);
            }
        }
    }
};

Domain::Domain(Kind kind, std::size_t dim, int series_order)
    : kind_(kind), dim_(dim), series_order_(series_order) {
    switch (kind_) {
        case Kind::interval:
            center_ = {0.5};
            break;
        case Kind::disk:
            center_ = {1.0, 1.0};
            break;
        case Kind::ball:
            center_ = {1.0, 1.0, 1.0};
            break;
        case Kind::hypercube:
            center_.assign(dim_, 0.5);
            tables_ = std::make_shared<const SeriesTables>(dim_, series_order_);
            break;
    }
}

Domain Domain::unit_interval() { return Domain(Kind::interval, 1, 0); }
Domain Domain::unit_disk() { return Domain(Kind::disk, 2, 0); }
Domain Domain::unit_ball() { return Domain(Kind::ball, 3, 0); }

Domain Domain::unit_hypercube(std::size_t d, int series_order) {
    if (d < 1 || d > 4) throw std::invalid_argument("unit_hypercube: dimension must be 1..4");
    if (series_order < 1) throw std::invalid_argument("unit_hypercube: series order must be >= 1");
    return Domain(Kind::hypercube, d, series_order);
}

Box Domain::bounding_box() const {
    Box box;
    switch (kind_) {
        case Kind::interval:
        case Kind::hypercube:
            box = Box::from_lengths(std::vector<double>(dim_, 1.0));
            break;
        case Kind::disk:
        case Kind::ball:
            box = Box::from_lengths(std::vector<double>(dim_, 2.0));
            break;
    }
    return box;
}

bool Domain::contains(std::span<const double> x) const {
    return boundary_distance(x) > 0.0;
}

double Domain::boundary_distance(std::span<const double> x) const {
    if (x.size() != dim_) throw std::invalid_argument("Domain: dimension mismatch");
    switch (kind_) {
        case Kind::interval:
            return std::min(x[0], 1.0 - x[0]);
        case Kind::disk:
        case Kind::ball: {
            double s2 = 0.0;
            for (std::size_t j = 0; j < dim_; ++j) s2 += sq(x[j] - center_[j]);
            return 1.0 - std::sqrt(s2);
        }
        case Kind::hypercube: {
            double dist = 1.0;
            for (std::size_t j = 0; j < dim_; ++j) {
                dist = std::min({dist, x[j], 1.0 - x[j]});
            }
            return dist;
        }
    }
    return 0.0;
}

namespace {

// |s x - x_hat| with x_hat = y/|y|, written so the y -> 0 limit is exact:
// this is |y| * |x - y/|y|^2|, the image-charge distance factor.
double image_factor(std::span<const double> xc, std::span<const double> yc) {
    const double ynorm = norm2(yc);
    if (ynorm == 0.0) return 1.0;
    double s = 0.0;
    for (std::size_t j = 0; j < xc.size(); ++j) {
        s += sq(ynorm * xc[j] - yc[j] / ynorm);
    }
    return std::sqrt(s);
}

}  // namespace

double Domain::green(std::span<const double> x, std::span<const double> y) const {
    if (x.size() != dim_ || y.size() != dim_) {
        throw std::invalid_argument("Domain::green: dimension mismatch");
    }
    if (boundary_distance(x) < 0.0 || boundary_distance(y) < 0.0) return 0.0;
    if (dim_ >= 2 && std::equal(x.begin(), x.end(), y.begin())) {
        throw std::domain_error("Domain::green: singular at x = y");
    }

    switch (kind_) {
        case Kind::interval:
            return x[0] <= y[0] ? x[0] * (1.0 - y[0]) : y[0] * (1.0 - x[0]);
        case Kind::disk: {
            const double xc[2] = {x[0] - center_[0], x[1] - center_[1]};
            const double yc[2] = {y[0] - center_[0], y[1] - center_[1]};
            const double r = std::sqrt(sq(xc[0] - yc[0]) + sq(xc[1] - yc[1]));
            const double img = image_factor(xc, yc);
            return std::log(img / r) / (2.0 * kPi);
        }
        case Kind::ball: {
            const double xc[3] = {x[0] - center_[0], x[1] - center_[1], x[2] - center_[2]};
            const double yc[3] = {y[0] - center_[0], y[1] - center_[1], y[2] - center_[2]};
            const double r =
                std::sqrt(sq(xc[0] - yc[0]) + sq(xc[1] - yc[1]) + sq(xc[2] - yc[2]));
            const double img = image_factor(xc, yc);
            return (1.0 / r - 1.0 / img) / (4.0 * kPi);
        }
        case Kind::hypercube:
            return green_hypercube(x, y);
    }
    return 0.0;
}

double Domain::green_hypercube(std::span<const double> x, std::span<const double> y) const {
    const SeriesTables& tab = *tables_;
    const int N = tab.N;
    // Per-axis products 2 sin(n pi x_j) sin(n pi y_j).
    std::vector<double> sprod(dim_ * N);
    {
        std::vector<double> sx(N), sy(N);
        for (std::size_t j = 0; j < dim_; ++j) {
            sin_multiples(x[j], N, sx);
            sin_multiples(y[j], N, sy);
            for (int n = 0; n < N; ++n) sprod[j * N + n] = 2.0 * sx[n] * sy[n];
        }
    }
    double acc = 0.0;
    for (std::size_t ti = 0; ti < tab.t_nodes.size(); ++ti) {
        const double* e = &tab.exp_table[ti * N];
        double prod = 1.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            const double* s = &sprod[j * N];
            double axis = 0.0;
            for (int n = 0; n < N; ++n) axis += s[n] * e[n];
            prod *= axis;
        }
        acc += tab.t_weights[ti] * prod;
    }
    return acc;
}

namespace {

// sum over n in {1..N}^d of prod_j a_j[n_j] / (pi^2 |n|^2)^power.
double hypercube_series_sum(std::span<const std::vector<double>> axis, int power) {
    const std::size_t d = axis.size();
    const int N = static_cast<int>(axis[0].size());
    double total = 0.0;
    std::vector<int> n(d, 1);
    for (;;) {
        double prod = 1.0;
        double s2 = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            prod *= axis[j][n[j] - 1];
            s2 += sq(static_cast<double>(n[j]));
        }
        const double lambda = kPi * kPi * s2;
        total += prod / (power == 1 ? lambda : lambda * lambda);
        std::size_t j = 0;
        while (j < d && ++n[j] > N) {
            n[j] = 1;
            ++j;
        }
        if (j == d) break;
    }
    return total;
}

}  // namespace

double Domain::green_integral(std::span<const double> x) const {
    if (x.size() != dim_) throw std::invalid_argument("Domain::green_integral: dimension mismatch");
    if (boundary_distance(x) <= 0.0) return 0.0;
    switch (kind_) {
        case Kind::interval:
            return 0.5 * x[0] * (1.0 - x[0]);
        case Kind::disk: {
            const double s2 = sq(x[0] - center_[0]) + sq(x[1] - center_[1]);
            return (1.0 - s2) / 4.0;
        }
        case Kind::ball: {
            const double s2 =
                sq(x[0] - center_[0]) + sq(x[1] - center_[1]) + sq(x[2] - center_[2]);
            return (1.0 - s2) / 6.0;
        }
        case Kind::hypercube: {
            const int N = tables_->N;
            std::vector<std::vector<double>> axis(dim_, std::vector<double>(N));
            std::vector<double> sx(N);
            for (std::size_t j = 0; j < dim_; ++j) {
                sin_multiples(x[j], N, sx);
                for (int n = 1; n <= N; ++n) {
                    const double inner = (n % 2 == 1) ? 2.0 / (n * kPi) : 0.0;
                    axis[j][n - 1] = 2.0 * sx[n - 1] * inner;
                }
            }
            return hypercube_series_sum(axis, 1);
        }
    }
    return 0.0;
}

double Domain::parseval_l2sq(std::span<const double> x) const {
    const int N = tables_->N;
    std::vector<std::vector<double>> axis(dim_, std::vector<double>(N));
    std::vector<double> sx(N);
    for (std::size_t j = 0; j < dim_; ++j) {
        sin_multiples(x[j], N, sx);
        for (int n = 0; n < N; ++n) axis[j][n] = 2.0 * sq(sx[n]);
    }
    return hypercube_series_sum(axis, 2);
}

// ---------------------------------------------------------------------------
// Polar quadrature helpers around an interior point of the disk / ball.
// ---------------------------------------------------------------------------

namespace {

struct Frame2 {
    double e1[2], e2[2];
};

Frame2 make_frame2(std::span<const double> xc) {
    Frame2 f{};
    const double s = norm2(xc);
    if (s > 0.0) {
        f.e1[0] = xc[0] / s;
        f.e1[1] = xc[1] / s;
    } else {
        f.e1[0] = 1.0;
        f.e1[1] = 0.0;
    }
    f.e2[0] = -f.e1[1];
    f.e2[1] = f.e1[0];
    return f;
}

// Distance from an interior point at radius s to the unit circle/sphere along
// a direction making angle with cos = mu against the outward radial axis.
double boundary_ray(double s, double mu) {
    return -s * mu + std::sqrt(std::max(1.0 - s * s * (1.0 - mu * mu), 0.0));
}

// Integral of g over {y in D : r_lo <= |y - x|} (clip = true) or over the
// annulus r_lo <= |y - x| <= r_hi fully inside the disk (clip = false).
// Coordinates are centered on the disk.
double disk_polar_integral(std::span<const double> xc, double r_lo, double r_hi, bool clip,
                           int n_theta, const std::function<double(const double*)>& g) {
    const double s = norm2(xc);
    const Frame2 f = make_frame2(xc);
    const QuadratureRule radial_base = gauss_legendre(16);
    double total = 0.0;
    const double w_theta = 2.0 * kPi / n_theta;
    for (int it = 0; it < n_theta; ++it) {
        const double theta = w_theta * it;
        const double mu = std::cos(theta);
        const double dir[2] = {mu * f.e1[0] + std::sin(theta) * f.e2[0],
                               mu * f.e1[1] + std::sin(theta) * f.e2[1]};
        const double R = clip ? boundary_ray(s, mu) : r_hi;
        if (R <= r_lo) continue;
        // Geometric panels resolve the near field.
        double lo = r_lo, width = std::max(r_lo, R * 1e-6);
        while (lo < R) {
            const double hi = std::min(lo + width, R);
            const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
            for (std::size_t iq = 0; iq < radial_base.size(); ++iq) {
                const double r = mid + halfw * radial_base.nodes[iq];
                const double y[2] = {xc[0] + r * dir[0], xc[1] + r * dir[1]};
                total += w_theta * halfw * radial_base.weights[iq] * r * g(y);
            }
            lo = hi;
            width *= 2.0;
        }
    }
    return total;
}

// Same on the unit ball (centered coordinates): Gauss-Legendre in mu = cos of
// the polar angle against the x direction, trapezoid in the azimuth.
double ball_polar_integral(std::span<const double> xc, double r_lo, double r_hi, bool clip,
                           int n_mu, int n_phi, const std::function<double(const double*)>& g) {
    const double s = norm2(xc);
    double e1[3] = {1.0, 0.0, 0.0};
    if (s > 0.0) {
        for (int j = 0; j < 3; ++j) e1[j] = xc[j] / s;
    }
    // Complete the frame.
    double e2[3];
    if (std::abs(e1[0]) < 0.9) {
        e2[0] = 0.0;
        e2[1] = -e1[2];
        e2[2] = e1[1];
    } else {
        e2[0] = -e1[2];
        e2[1] = 0.0;
        e2[2] = e1[0];
    }
    const double n2 = std::sqrt(sq(e2[0]) + sq(e2[1]) + sq(e2[2]));
    for (int j = 0; j < 3; ++j) e2[j] /= n2;
    const double e3[3] = {e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                          e1[0] * e2[1] - e1[1] * e2[0]};

    const QuadratureRule mu_rule = gauss_legendre(n_mu, -1.0, 1.0);
    const QuadratureRule radial_base = gauss_legendre(16);
    const double w_phi = 2.0 * kPi / n_phi;
    double total = 0.0;
    for (std::size_t im = 0; im < mu_rule.size(); ++im) {
        const double mu = mu_rule.nodes[im];
        const double sin_g = std::sqrt(std::max(1.0 - mu * mu, 0.0));
        const double R = clip ? boundary_ray(s, mu) : r_hi;
        if (R <= r_lo) continue;
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = w_phi * ip;
            double dir[3];
            for (int j = 0; j < 3; ++j) {
                dir[j] = mu * e1[j] + sin_g * (std::cos(phi) * e2[j] + std::sin(phi) * e3[j]);
            }
            double lo = r_lo, width = std::max(r_lo, R * 1e-5);
            if (lo == 0.0) width = R / 64.0;
            while (lo < R) {
                const double hi = std::min(lo + width, R);
                const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
                for (std::size_t iq = 0; iq < radial_base.size(); ++iq) {
                    const double r = mid + halfw * radial_base.nodes[iq];
                    const double y[3] = {xc[0] + r * dir[0], xc[1] + r * dir[1],
                                         xc[2] + r * dir[2]};
                    total += mu_rule.weights[im] * w_phi * halfw * radial_base.weights[iq] * r *
                             r * g(y);
                }
                lo = hi;
                width *= 2.0;
            }
        }
    }
    return total;
}

}  // namespace

double Domain::green_l2sq(std::span<const double> x) const {
    if (x.size() != dim_) throw std::invalid_argument("Domain::green_l2sq: dimension mismatch");
    if (dim_ >= 4) {
        throw std::domain_error("Domain::green_l2sq: integral does not converge for d >= 4");
    }
    if (boundary_distance(x) <= 0.0) return 0.0;

    switch (kind_) {
        case Kind::interval:
            return sq(x[0]) * sq(1.0 - x[0]) / 3.0;
        case Kind::disk: {
            const double xc[2] = {x[0] - center_[0], x[1] - center_[1]};
            const double s = norm2(xc);
            const double r0 = 1e-6;
            const double far = disk_polar_integral(
                xc, r0, 0.0, true, 96, [&](const double* y) {
                    const double yabs[2] = {y[0] + center_[0], y[1] + center_[1]};
                    return sq(green(x, std::span<const double>(yabs, 2)));
                });
            // Analytic near field of ((a - ln r)/2pi)^2 below r0, a = ln(1-s^2).
            const double a = std::log(1.0 - s * s);
            const double lw = std::log(r0);
            const double near =
                (1.0 / (2.0 * kPi)) * 0.5 * sq(r0) * (sq(a - lw) + (a - lw) + 0.5);
            return far + near;
        }
        case Kind::ball: {
            const double xc[3] = {x[0] - center_[0], x[1] - center_[1], x[2] - center_[2]};
            // r^2 G^2 is bounded, so plain polar quadrature from r = 0 works.
            return ball_polar_integral(xc, 0.0, 0.0, true, 32, 64, [&](const double* y) {
                const double yabs[3] = {y[0] + center_[0], y[1] + center_[1],
                                        y[2] + center_[2]};
                return sq(green(x, std::span<const double>(yabs, 3)));
            });
        }
        case Kind::hypercube:
            return parseval_l2sq(x);
    }
    return 0.0;
}

double Domain::series_tail_bound() const {
    if (kind_ != Kind::hypercube) return 0.0;
    if (dim_ >= 4) return std::numeric_limits<double>::infinity();
    // Tail of sum lambda_n^{-2} beyond the N-box: exact shell sum to 3N plus a
    // continuum remainder estimate.
    const int N = tables_->N;
    double shell = 0.0;
    std::vector<int> n(dim_, 1);
    const int cap = 3 * N;
    for (;;) {
        bool outside = false;
        double s2 = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (n[j] > N) outside = true;
            s2 += sq(static_cast<double>(n[j]));
        }
        if (outside) shell += 1.0 / sq(kPi * kPi * s2);
        std::size_t j = 0;
        while (j < dim_ && ++n[j] > cap) {
            n[j] = 1;
            ++j;
        }
        if (j == dim_) break;
    }
    const double d = static_cast<double>(dim_);
    const double remainder = d * std::pow(static_cast<double>(cap), d - 4.0) / (4.0 - d) /
                             std::pow(kPi, 4.0);
    return shell + remainder;
}

// ---------------------------------------------------------------------------
// Chaos-expansion solution
// ---------------------------------------------------------------------------

namespace {

// Integral of G(x,.) zeta_k over the interval domain, split at the kink y = x.
double interval_coefficient(const Domain& domain, std::uint64_t k, double x) {
    const double xa[1] = {x};
    const auto integrand = [&](double y) {
        const double ya[1] = {y};
        return domain.green(std::span<const double>(xa, 1), std::span<const double>(ya, 1)) *
               hermite_fn(k, y);
    };
    const int panels =
        std::max(3, static_cast<int>(std::sqrt(2.0 * static_cast<double>(k) + 1.0) / 3.0) + 1);
    double total = 0.0;
    if (x > 0.0) total += composite_gauss_legendre(24, 0.0, x, panels).apply(integrand);
    if (x < 1.0) total += composite_gauss_legendre(24, x, 1.0, panels).apply(integrand);
    return total;
}

double disk_coefficient(const Domain& domain, std::uint64_t k, std::span<const double> x) {
    const double xc[2] = {x[0] - domain.center()[0], x[1] - domain.center()[1]};
    const int n_theta =
        64 + 8 * static_cast<int>(std::sqrt(2.0 * static_cast<double>(k) + 1.0));
    return disk_polar_integral(std::span<const double>(xc, 2), 1e-7, 0.0, true, n_theta,
                               [&](const double* y) {
                                   const double yabs[2] = {y[0] + domain.center()[0],
                                                           y[1] + domain.center()[1]};
                                   const std::span<const double> ys(yabs, 2);
                                   return domain.green(x, ys) * tensor_hermite(k, ys);
                               });
}

double ball_coefficient(const Domain& domain, std::uint64_t k, std::span<const double> x) {
    const double xc[3] = {x[0] - domain.center()[0], x[1] - domain.center()[1],
                          x[2] - domain.center()[2]};
    const int n_mu = 24 + 2 * static_cast<int>(std::sqrt(2.0 * static_cast<double>(k) + 1.0));
    return ball_polar_integral(std::span<const double>(xc, 3), 0.0, 0.0, true, n_mu, 2 * n_mu,
                               [&](const double* y) {
                                   const double yabs[3] = {y[0] + domain.center()[0],
                                                           y[1] + domain.center()[1],
                                                           y[2] + domain.center()[2]};
                                   const std::span<const double> ys(yabs, 3);
                                   return domain.green(x, ys) * tensor_hermite(k, ys);
                               });
}

// Table of int_0^1 sqrt(2) sin(n pi t) xi_i(t) dt for n <= N, i <= imax;
// entry [(n-1)*imax + (i-1)].
std::vector<double> sine_hermite_table(int N, std::uint64_t imax) {
    const int panels = std::max<int>(
        8, static_cast<int>((N + std::sqrt(2.0 * static_cast<double>(imax) + 1.0)) / 3.0));
    const QuadratureRule rule = composite_gauss_legendre(24, 0.0, 1.0, panels);
    std::vector<double> table(static_cast<std::size_t>(N) * imax, 0.0);
    std::vector<double> xi(imax), sn(N);
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = rule.nodes[q], w = rule.weights[q];
        hermite_fn_all(imax, t, xi);
        sin_multiples(t, N, sn);
        for (int n = 0; n < N; ++n) {
            const double f = w * std::sqrt(2.0) * sn[n];
            for (std::uint64_t i = 0; i < imax; ++i) {
                table[static_cast<std::size_t>(n) * imax + i] += f * xi[i];
            }
        }
    }
    return table;
}

// Spectral coefficient on the hypercube:
// int G zeta_k = sum_n e_n(x) / lambda_n * prod_j <sqrt(2) sin(n_j pi .), xi_{i_j}>.
double hypercube_coefficient(const Domain& domain, std::uint64_t k, std::span<const double> x,
                             const std::vector<double>& table, std::uint64_t imax) {
    const std::size_t d = domain.dim();
    const int N = domain.series_order();
    const std::vector<unsigned> tuple = dim_tuple(d, k);

    std::vector<std::vector<double>> axis(d, std::vector<double>(N));
    std::vector<double> sx(N);
    for (std::size_t j = 0; j < d; ++j) {
        sin_multiples(x[j], N, sx);
        for (int n = 1; n <= N; ++n) {
            axis[j][n - 1] = std::sqrt(2.0) * sx[n - 1] *
                             table[static_cast<std::size_t>(n - 1) * imax + (tuple[j] - 1)];
        }
    }
    return hypercube_series_sum(axis, 1);
}

double raw_coefficient(const Domain& domain, std::uint64_t k, std::span<const double> x,
                       const std::vector<double>* hypercube_table = nullptr,
                       std::uint64_t imax = 0) {
    switch (domain.kind()) {
        case Domain::Kind::interval:
            return interval_coefficient(domain, k, x[0]);
        case Domain::Kind::disk:
            return disk_coefficient(domain, k, x);
        case Domain::Kind::ball:
            return ball_coefficient(domain, k, x);
        case Domain::Kind::hypercube: {
            if (hypercube_table != nullptr) {
                return hypercube_coefficient(domain, k, x, *hypercube_table, imax);
            }
            const std::vector<unsigned> tuple = dim_tuple(domain.dim(), k);
            const std::uint64_t need = *std::max_element(tuple.begin(), tuple.end());
            const std::vector<double> table = sine_hermite_table(domain.series_order(), need);
            return hypercube_coefficient(domain, k, x, table, need);
        }
    }
    return 0.0;
}

void require_in_closure(const Domain& domain, std::span<const double> x) {
    if (domain.boundary_distance(x) < -1e-12) {
        throw std::invalid_argument("point is outside the closure of the domain");
    }
}

}  // namespace

double chaos_coefficient(const Domain& domain, const LevyMeasureModel& model, std::uint64_t k,
                         std::span<const double> x) {
    require_in_closure(domain, x);
    return model.m() * raw_coefficient(domain, k, x);
}

SolutionField solve_chaos(const Domain& domain, const LevyMeasureModel& model,
                          std::span<const double> x, std::uint64_t K) {
    require_in_closure(domain, x);
    if (K < 1) throw std::invalid_argument("solve_chaos: K must be >= 1");

    SolutionField field;
    field.x.assign(x.begin(), x.end());
    field.K = K;

    const double m = model.m();
    if (domain.kind() == Domain::Kind::hypercube) {
        std::uint64_t imax = 1;
        for (std::uint64_t k = 1; k <= K; ++k) {
            const std::vector<unsigned> tuple = dim_tuple(domain.dim(), k);
            imax = std::max<std::uint64_t>(imax, *std::max_element(tuple.begin(), tuple.end()));
        }
        const std::vector<double> table = sine_hermite_table(domain.series_order(), imax);
        for (std::uint64_t k = 1; k <= K; ++k) {
            field.chaos.set(MultiIndex::unit(cantor_pair(k, 1)),
                            m * hypercube_coefficient(domain, k, x, table, imax));
        }
    } else {
        for (std::uint64_t k = 1; k <= K; ++k) {
            field.chaos.set(MultiIndex::unit(cantor_pair(k, 1)), m * raw_coefficient(domain, k, x));
        }
    }
    if (domain.dim() <= 3) {
        field.variance_exact = model.m2() * domain.green_l2sq(x);
    }
    return field;
}

std::complex<double> hermite_solution(const Domain& domain, const LevyMeasureModel& model,
                                      std::span<const double> x, const ComplexPoint& z,
                                      std::uint64_t K) {
    return hermite_transform(solve_chaos(domain, model, x, K).chaos, z);
}

double solve_mc(const Domain& domain, const LevyMeasureModel& model,
                const PointConfiguration& config, std::span<const double> x) {
    if (domain.dim() >= 4) {
        throw std::domain_error("solve_mc: the random-field solution requires d <= 3");
    }
    require_in_closure(domain, x);
    const Box bound = domain.bounding_box();
    if (config.dim() != domain.dim()) throw std::invalid_argument("solve_mc: dimension mismatch");
    for (std::size_t j = 0; j < bound.dim(); ++j) {
        if (config.box.lo[j] > 1e-12 || config.box.hi[j] < bound.hi[j] - 1e-12) {
            throw std::invalid_argument("solve_mc: configuration box does not cover the domain");
        }
    }

    double s = 0.0;
    for (const auto& p : config.points) {
        const std::span<const double> y(p.x.data(), config.dim());
        if (domain.boundary_distance(y) > 0.0) {
            s += domain.green(x, y) * p.z;
        }
    }
    return s - model.mean_jump_above(config.eps) * domain.green_integral(x);
}

double variance_exact(const Domain& domain, const LevyMeasureModel& model,
                      std::span<const double> x) {
    if (domain.dim() >= 4) {
        throw std::domain_error("variance_exact: requires d <= 3");
    }
    return model.m2() * domain.green_l2sq(x);
}

ResidualReport laplacian_residual(const Domain& domain, const LevyMeasureModel& model,
                                  std::uint64_t k, double h) {
    if (h <= 0.0) throw std::invalid_argument("laplacian_residual: h must be > 0");
    const std::size_t d = domain.dim();
    const double m = model.m();

    // Lattice over an axis-aligned cube well inside D, centred on the domain.
    const double half = (domain.kind() == Domain::Kind::interval ||
                         domain.kind() == Domain::Kind::hypercube)
                            ? 0.35
                            : 0.4 / std::sqrt(static_cast<double>(d));
    const int steps = static_cast<int>(std::floor(2.0 * half / h));
    if (steps < 3) throw std::invalid_argument("laplacian_residual: h too large for the lattice");

    std::vector<double> lo(d);
    for (std::size_t j = 0; j < d; ++j) lo[j] = domain.center()[j] - half;

    // Cache c_k on the lattice.
    std::vector<int> idx(d, 0);
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t j = 1; j < d; ++j) stride[j] = stride[j - 1] * (steps + 1);
    std::vector<double> values(stride[d - 1] * (steps + 1));

    const std::uint64_t imax = [&] {
        const std::vector<unsigned> tuple = dim_tuple(d, k);
        return static_cast<std::uint64_t>(*std::max_element(tuple.begin(), tuple.end()));
    }();
    std::vector<double> table;
    if (domain.kind() == Domain::Kind::hypercube) {
        table = sine_hermite_table(domain.series_order(), imax);
    }

    std::vector<double> x(d);
    for (;;) {
        std::size_t flat = 0;
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = lo[j] + idx[j] * h;
            flat += idx[j] * stride[j];
        }
        values[flat] = m * raw_coefficient(domain, k, x, table.empty() ? nullptr : &table, imax);
        std::size_t j = 0;
        while (j < d && ++idx[j] > steps) {
            idx[j] = 0;
            ++j;
        }
        if (j == d) break;
    }

    // Second-order stencil on interior lattice nodes.
    ResidualReport report;
    report.h = h;
    std::vector<int> it(d, 1);
    for (;;) {
        std::size_t flat = 0;
        for (std::size_t j = 0; j < d; ++j) {
            x[j] = lo[j] + it[j] * h;
            flat += it[j] * stride[j];
        }
        double lap = 0.0;
        double lap_zeta = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            lap += (values[flat + stride[j]] - 2.0 * values[flat] + values[flat - stride[j]]) /
                   (h * h);
            std::vector<double> xp(x), xm(x);
            xp[j] += h;
            xm[j] -= h;
            lap_zeta += (m * tensor_hermite(k, xp) - 2.0 * m * tensor_hermite(k, x) +
                         m * tensor_hermite(k, xm)) /
                        (h * h);
        }
        report.max_residual = std::max(report.max_residual, std::abs(lap + m * tensor_hermite(k, x)));
        report.reference_scale = std::max(report.reference_scale, h * h / 12.0 * std::abs(lap_zeta));
        std::size_t j = 0;
        while (j < d && ++it[j] > steps - 1) {
            it[j] = 1;
            ++j;
        }
        if (j == d) break;
    }
    return report;
}

// ---------------------------------------------------------------------------
// Divergence profile
// ---------------------------------------------------------------------------

namespace {

// S^3 x radial quadrature of g over a shell r_lo <= |y - x| <= r_hi in R^4.
double shell4_integral(std::span<const double> x, double r_lo, double r_hi,
                       const std::function<double(const double*)>& g, int n_theta = 12,
                       int n_phi = 24) {
    const QuadratureRule th1 = gauss_legendre(n_theta, 0.0, kPi);
    const QuadratureRule th2 = gauss_legendre(n_theta, 0.0, kPi);
    const double w_phi = 2.0 * kPi / n_phi;
    const QuadratureRule radial_base = gauss_legendre(12);

    double total = 0.0;
    for (std::size_t i1 = 0; i1 < th1.size(); ++i1) {
        const double c1 = std::cos(th1.nodes[i1]), s1 = std::sin(th1.nodes[i1]);
        for (std::size_t i2 = 0; i2 < th2.size(); ++i2) {
            const double c2 = std::cos(th2.nodes[i2]), s2 = std::sin(th2.nodes[i2]);
            const double ang_w = th1.weights[i1] * th2.weights[i2] * s1 * s1 * s2 * w_phi;
            for (int ip = 0; ip < n_phi; ++ip) {
                const double phi = w_phi * ip;
                const double dir[4] = {c1, s1 * c2, s1 * s2 * std::cos(phi),
                                       s1 * s2 * std::sin(phi)};
                double lo = r_lo, width = (r_lo > 0.0) ? r_lo * 0.5 : r_hi / 64.0;
                while (lo < r_hi) {
                    const double hi = std::min(lo + width, r_hi);
                    const double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
                    for (std::size_t iq = 0; iq < radial_base.size(); ++iq) {
                        const double r = mid + halfw * radial_base.nodes[iq];
                        const double y[4] = {x[0] + r * dir[0], x[1] + r * dir[1],
                                             x[2] + r * dir[2], x[3] + r * dir[3]};
                        total += ang_w * halfw * radial_base.weights[iq] * r * r * r * g(y);
                    }
                    lo = hi;
                    width *= 2.0;
                }
            }
        }
    }
    return total;
}

}  // namespace

namespace {

double ball_l2_integral(const Domain& domain, std::span<const double> x, double r_lo,
                        double r_hi) {
    switch (domain.kind()) {
        case Domain::Kind::interval: {
            const auto g2 = [&](double y) {
                const double ya[1] = {y};
                return sq(domain.green(x, std::span<const double>(ya, 1)));
            };
            // G^2 is piecewise quadratic, so one Gauss panel per side is exact.
            return gauss_legendre(8, x[0] - r_hi, x[0] - r_lo).apply(g2) +
                   gauss_legendre(8, x[0] + r_lo, x[0] + r_hi).apply(g2);
        }
        case Domain::Kind::disk: {
            const double xc[2] = {x[0] - domain.center()[0], x[1] - domain.center()[1]};
            return disk_polar_integral(std::span<const double>(xc, 2), r_lo, r_hi, false, 96,
                                       [&](const double* y) {
                                           const double yabs[2] = {y[0] + domain.center()[0],
                                                                   y[1] + domain.center()[1]};
                                           return sq(domain.green(x, std::span<const double>(yabs, 2)));
                                       });
        }
        case Domain::Kind::ball: {
            const double xc[3] = {x[0] - domain.center()[0], x[1] - domain.center()[1],
                                  x[2] - domain.center()[2]};
            return ball_polar_integral(std::span<const double>(xc, 3), r_lo, r_hi, false, 24, 48,
                                       [&](const double* y) {
                                           const double yabs[3] = {y[0] + domain.center()[0],
                                                                   y[1] + domain.center()[1],
                                                                   y[2] + domain.center()[2]};
                                           return sq(domain.green(x, std::span<const double>(yabs, 3)));
                                       });
        }
        case Domain::Kind::hypercube: {
            return shell4_integral(x, r_lo, r_hi, [&](const double* y) {
                return sq(domain.green(x, std::span<const double>(y, 4)));
            });
        }
    }
    return 0.0;
}

}  // namespace

std::vector<std::pair<double, double>> divergence_profile(std::size_t d,
                                                          std::span<const double> x,
                                                          std::span<const double> deltas) {
    if (x.size() != d) throw std::invalid_argument("divergence_profile: dimension mismatch");
    if (deltas.empty()) return {};
    for (std::size_t i = 0; i + 1 < deltas.size(); ++i) {
        if (!(deltas[i] > deltas[i + 1])) {
            throw std::invalid_argument("divergence_profile: deltas must be strictly decreasing");
        }
    }
    if (!(deltas.back() > 0.0)) {
        throw std::invalid_argument("divergence_profile: deltas must be positive");
    }

    Domain domain = [&] {
        switch (d) {
            case 1:
                return Domain::unit_interval();
            case 2:
                return Domain::unit_disk();
            case 3:
                return Domain::unit_ball();
            case 4:
                return Domain::unit_hypercube(4, 64);
            default:
                throw std::invalid_argument("divergence_profile: d must be 1..4");
        }
    }();
    if (domain.boundary_distance(x) <= deltas[0]) {
        throw std::invalid_argument("divergence_profile: largest delta reaches the boundary");
    }

    // Total over D, then peel the ball at the largest delta and add shells.
    const double total =
        (d <= 3) ? domain.green_l2sq(x) : domain.parseval_l2sq(x);
    std::vector<std::pair<double, double>> profile;
    double current = total - ball_l2_integral(domain, x, 0.0, deltas[0]);
    profile.emplace_back(deltas[0], current);
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        current += ball_l2_integral(domain, x, deltas[i], deltas[i - 1]);
        profile.emplace_back(deltas[i], current);
    }
    return profile;
}

}  // namespace levywn
