#include "levywn/chaos.hpp"

#include <cmath>
#include <stdexcept>

namespace levywn {

std::complex<double> ComplexPoint::power(const MultiIndex& alpha) const {
    std::complex<double> prod(1.0, 0.0);
    const std::vector<unsigned>& e = alpha.entries();
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        const std::complex<double> zj = at(j + 1);
        for (unsigned p = 0; p < e[j]; ++p) prod *= zj;
    }
    return prod;
}

ChaosExpansion ChaosExpansion::constant(double c) {
    ChaosExpansion F;
    F.set(MultiIndex(), c);
    return F;
}

ChaosExpansion ChaosExpansion::basis_vector(const MultiIndex& alpha, double c) {
    ChaosExpansion F;
    F.set(alpha, c);
    return F;
}

double ChaosExpansion::coefficient(const MultiIndex& alpha) const {
    const auto it = terms_.find(alpha);
    return it == terms_.end() ? 0.0 : it->second;
}

void ChaosExpansion::set(const MultiIndex& alpha, double c) {
    if (c == 0.0) {
        terms_.erase(alpha);
    } else {
        terms_[alpha] = c;
    }
}

void ChaosExpansion::add(const MultiIndex& alpha, double c) {
    if (c == 0.0) return;
    const auto [it, inserted] = terms_.emplace(alpha, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) terms_.erase(it);
    }
}

std::uint64_t ChaosExpansion::max_order() const {
    // Keys are graded, so the last one has the largest order.
    return terms_.empty() ? 0 : terms_.rbegin()->first.order();
}

ChaosExpansion ChaosExpansion::operator+(const ChaosExpansion& other) const {
    ChaosExpansion out = *this;
    for (const auto& [alpha, c] : other.terms_) out.add(alpha, c);
    return out;
}

ChaosExpansion ChaosExpansion::operator-(const ChaosExpansion& other) const {
    ChaosExpansion out = *this;
    for (const auto& [alpha, c] : other.terms_) out.add(alpha, -c);
    return out;
}

ChaosExpansion ChaosExpansion::scaled(double s) const {
    ChaosExpansion out;
    if (s == 0.0) return out;
    for (const auto& [alpha, c] : terms_) out.set(alpha, s * c);
    return out;
}

ChaosExpansion wick(const ChaosExpansion& F, const ChaosExpansion& G) {
    ChaosExpansion out;
    for (const auto& [alpha, a] : F.terms()) {
        for (const auto& [beta, b] : G.terms()) {
            out.add(alpha + beta, a * b);
        }
    }
    return out;
}

double expectation(const ChaosExpansion& F) { return F.coefficient(MultiIndex()); }

double inner(const ChaosExpansion& F, const ChaosExpansion& G) {
    const ChaosExpansion& small = F.term_count() <= G.term_count() ? F : G;
    const ChaosExpansion& large = F.term_count() <= G.term_count() ? G : F;
    double s = 0.0;
    for (const auto& [alpha, a] : small.terms()) {
        const double b = large.coefficient(alpha);
        if (b != 0.0) s += alpha.factorial() * a * b;
    }
    return s;
}

double l2_norm(const ChaosExpansion& F) {
    double s = 0.0;
    for (const auto& [alpha, c] : F.terms()) s += alpha.factorial() * c * c;
    return std::sqrt(s);
}

double kondratiev_norm(const ChaosExpansion& F, double rho, int k) {
    if (rho < -1.0 || rho > 1.0) {
        throw std::invalid_argument("kondratiev_norm: rho must lie in [-1,1]");
    }
    double s = 0.0;
    for (const auto& [alpha, c] : F.terms()) {
        s += std::pow(alpha.factorial(), 1.0 + rho) * c * c * alpha.weight(k);
    }
    return std::sqrt(s);
}

std::complex<double> hermite_transform(const ChaosExpansion& F, const ComplexPoint& z) {
    std::complex<double> s(0.0, 0.0);
    for (const auto& [alpha, c] : F.terms()) s += c * z.power(alpha);
    return s;
}

std::optional<double> neighborhood_sum(const ComplexPoint& z, double q) {
    double prod = 1.0;
    for (std::size_t j = 1; j <= z.entries.size(); ++j) {
        const double t = std::norm(z.at(j)) * std::pow(2.0 * static_cast<double>(j), q);
        if (t >= 1.0) return std::nullopt;
        prod /= 1.0 - t;
    }
    return prod - 1.0;
}

bool in_neighborhood(const ComplexPoint& z, double q, double R) {
    const std::optional<double> s = neighborhood_sum(z, q);
    return s.has_value() && *s < R * R;
}

double growth_constant(const ChaosExpansion& F, double q) {
    double s = 0.0;
    for (const auto& [alpha, c] : F.terms()) s += c * c * alpha.weight(-q);
    return std::sqrt(s);
}

}  // namespace levywn
