#include "levywn/levy_measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levywn/quadrature.hpp"

namespace levywn {

namespace {

// Intersection of [lo,hi] with {|z| >= eps}, as up to two intervals.
std::vector<std::pair<double, double>> restricted_pieces(double lo, double hi, double eps) {
    std::vector<std::pair<double, double>> pieces;
    if (lo < -eps) pieces.emplace_back(lo, std::min(hi, -eps));
    if (hi > eps) pieces.emplace_back(std::max(lo, eps), hi);
    return pieces;
}

}  // namespace

LevyMeasureModel LevyMeasureModel::from_atoms(std::vector<Atom> atoms) {
    LevyMeasureModel model;
    model.atoms_ = std::move(atoms);
    std::sort(model.atoms_.begin(), model.atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.z < b.z; });
    model.validate();
    return model;
}

LevyMeasureModel LevyMeasureModel::from_density(const std::string& expr_id, double a, double b,
                                                int nodes) {
    if (!(a < b)) throw std::invalid_argument("LevyMeasureModel: empty support");
    if (nodes < 16) throw std::invalid_argument("LevyMeasureModel: nodes must be >= 16");
    LevyMeasureModel model;
    model.density_ = density_registry(expr_id);
    model.expr_id_ = expr_id;
    model.support_lo_ = a;
    model.support_hi_ = b;
    model.nodes_ = nodes;
    model.validate();
    return model;
}

std::function<double(double)> LevyMeasureModel::density_registry(const std::string& expr_id) {
    if (expr_id == "const") return [](double) { return 1.0; };
    if (expr_id == "exp") return [](double z) { return std::exp(-std::abs(z)); };
    if (expr_id == "gauss") return [](double z) { return std::exp(-0.5 * z * z); };
    // Infinite-activity example: behaves like z^{-2} near the origin, so the
    // total mass is infinite but all moments of order >= 2 are finite.
    if (expr_id == "inv_square_exp") {
        return [](double z) { return std::exp(-std::abs(z)) / (z * z); };
    }
    throw std::invalid_argument("LevyMeasureModel: unknown density expr_id '" + expr_id + "'");
}

void LevyMeasureModel::validate() const {
    if (atomic()) {
        if (atoms_.empty()) throw std::invalid_argument("LevyMeasureModel: no atoms");
        for (const Atom& a : atoms_) {
            if (a.z == 0.0) throw std::invalid_argument("LevyMeasureModel: atom at 0");
            if (!(a.w > 0.0)) throw std::invalid_argument("LevyMeasureModel: atom weight <= 0");
        }
    }
    const double v = moment(2);
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("LevyMeasureModel: second moment must be finite and > 0");
    }
}

double LevyMeasureModel::moment(int k) const {
    if (k < 2) throw std::invalid_argument("LevyMeasureModel::moment: order must be >= 2");
    return integrate([k](double z) { return std::pow(z, k); }, 0.0);
}

double LevyMeasureModel::m() const { return std::sqrt(m2()); }

double LevyMeasureModel::mass_above(double eps) const {
    try {
        return integrate([](double) { return 1.0; }, eps);
    } catch (const std::runtime_error&) {
        throw std::runtime_error("LevyMeasureModel: restricted mass does not converge (eps too small?)");
    }
}

double LevyMeasureModel::mean_jump_above(double eps) const {
    return integrate([](double z) { return z; }, eps);
}

double LevyMeasureModel::truncated_variance(double eps) const {
    if (eps <= 0.0) return 0.0;
    if (atomic()) {
        double s = 0.0;
        for (const Atom& a : atoms_) {
            if (std::abs(a.z) < eps) s += a.w * a.z * a.z;
        }
        return s;
    }
    double s = 0.0;
    const double lo = std::max(support_lo_, -eps), hi = std::min(support_hi_, eps);
    if (lo < hi) {
        // z^2 * density is bounded at the origin for every registered density,
        // so a panel split at 0 is enough.
        for (const auto& [a, b] : restricted_pieces(lo, hi, 0.0)) {
            s += integrate_adaptive([this](double z) { return z * z * density_(z); }, a, b, 1e-9);
        }
    }
    return s;
}

double LevyMeasureModel::integrate(const std::function<double(double)>& g, double eps) const {
    if (atomic()) {
        double s = 0.0;
        for (const Atom& a : atoms_) {
            if (std::abs(a.z) >= eps) s += a.w * g(a.z);
        }
        return s;
    }
    double s = 0.0;
    for (const auto& [a, b] : restricted_pieces(support_lo_, support_hi_, eps)) {
        // Split at 0 so the origin is only ever a panel endpoint.
        for (const auto& [a2, b2] : restricted_pieces(a, b, 0.0)) {
            s += integrate_adaptive([this, &g](double z) { return g(z) * density_(z); }, a2, b2,
                                    1e-10);
        }
    }
    return s;
}

double LevyMeasureModel::sample_jump(double eps, RandomSource& rng) const {
    return make_jump_sampler(eps)(rng);
}

std::function<double(RandomSource&)> LevyMeasureModel::make_jump_sampler(double eps) const {
    if (atomic()) {
        std::vector<double> cum;
        std::vector<double> zs;
        double total = 0.0;
        for (const Atom& a : atoms_) {
            if (std::abs(a.z) >= eps) {
                total += a.w;
                cum.push_back(total);
                zs.push_back(a.z);
            }
        }
        if (zs.empty()) throw std::invalid_argument("make_jump_sampler: no atoms above eps");
        return [cum = std::move(cum), zs = std::move(zs), total](RandomSource& rng) {
            const double u = rng.uniform01() * total;
            const auto it = std::upper_bound(cum.begin(), cum.end(), u);
            const std::size_t i = std::min<std::size_t>(it - cum.begin(), zs.size() - 1);
            return zs[i];
        };
    }

    // Tabulated inverse CDF of the restricted density, piecewise linear.
    // Cells never straddle a gap between restricted pieces: cell i covers
    // [lo[i], hi[i]] with cumulative mass cdf[i].
    const int cells_per_piece = std::max(1024, nodes_ * 8);
    std::vector<double> lo, hi, cdf;
    double total = 0.0;
    for (const auto& [a, b] : restricted_pieces(support_lo_, support_hi_, eps)) {
        const double h = (b - a) / cells_per_piece;
        for (int i = 0; i < cells_per_piece; ++i) {
            const double za = a + i * h;
            const double zb = (i + 1 == cells_per_piece) ? b : a + (i + 1) * h;
            const double cell = composite_gauss_legendre(8, za, zb, 1).apply(density_);
            total += std::max(cell, 0.0);
            lo.push_back(za);
            hi.push_back(zb);
            cdf.push_back(total);
        }
    }
    if (cdf.empty() || !(total > 0.0)) {
        throw std::invalid_argument("make_jump_sampler: restricted measure has no mass");
    }
    return [lo = std::move(lo), hi = std::move(hi), cdf = std::move(cdf),
            total](RandomSource& rng) {
        const double u = rng.uniform01() * total;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t i = std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
        const double c0 = (i == 0) ? 0.0 : cdf[i - 1];
        const double frac = (cdf[i] > c0) ? (u - c0) / (cdf[i] - c0) : 0.5;
        return lo[i] + frac * (hi[i] - lo[i]);
    };
}

}  // namespace levywn
