#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "levywn/multi_index.hpp"

namespace levywn {

/// Finitely supported point z = (z_1, z_2, ...) in C^N; coordinates beyond
/// the stored entries are zero.
struct ComplexPoint {
    std::vector<std::complex<double>> entries;

    std::complex<double> at(std::size_t pos) const {
        return (pos >= 1 && pos <= entries.size()) ? entries[pos - 1]
                                                   : std::complex<double>(0.0, 0.0);
    }

    /// z^alpha = prod_j z_j^{alpha_j}, with z_j^0 = 1.
    std::complex<double> power(const MultiIndex& alpha) const;
};

/// Sparse formal chaos expansion F = sum_alpha c_alpha K_alpha.  Zero
/// coefficients are never stored; keys are canonical multi-indices ordered
/// by (order, lexicographic), so iteration is deterministic.
class ChaosExpansion {
public:
    using TermMap = std::map<MultiIndex, double>;

    ChaosExpansion() = default;
    static ChaosExpansion constant(double c);
    static ChaosExpansion basis_vector(const MultiIndex& alpha, double c = 1.0);

    double coefficient(const MultiIndex& alpha) const;
    void set(const MultiIndex& alpha, double c);
    void add(const MultiIndex& alpha, double c);

    std::size_t term_count() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    /// Largest |alpha| in the support; 0 for the empty expansion.
    std::uint64_t max_order() const;

    ChaosExpansion operator+(const ChaosExpansion& other) const;
    ChaosExpansion operator-(const ChaosExpansion& other) const;
    ChaosExpansion scaled(double s) const;

    bool operator==(const ChaosExpansion& other) const { return terms_ == other.terms_; }

private:
    TermMap terms_;
};

/// Wick product: coefficient of gamma is sum over alpha + beta = gamma of
/// a_alpha b_beta (sparse convolution over multi-indices).
ChaosExpansion wick(const ChaosExpansion& F, const ChaosExpansion& G);

/// E[F] = coefficient at the zero index.
double expectation(const ChaosExpansion& F);

/// Dual pairing <F,G> = sum_alpha alpha! a_alpha b_alpha.
double inner(const ChaosExpansion& F, const ChaosExpansion& G);

/// L^2(mu) norm (sum_alpha alpha! c_alpha^2)^{1/2}.
double l2_norm(const ChaosExpansion& F);

/// Weighted norm (sum_alpha (alpha!)^{1+rho} c_alpha^2 (2N)^{k alpha})^{1/2}
/// with rho in [-1,1] and signed integer k.  (rho,k) = (0,0) reduces to the
/// L^2 norm; negative (rho,k) give the distribution-space norms.
double kondratiev_norm(const ChaosExpansion& F, double rho, int k);

/// Hermite transform sum_alpha c_alpha z^alpha.
std::complex<double> hermite_transform(const ChaosExpansion& F, const ComplexPoint& z);

/// Closed form of sum_{alpha != 0} |z^alpha|^2 (2N)^{q alpha}: the sum equals
/// prod_{j in supp z} (1 - |z_j|^2 (2j)^q)^{-1} - 1 when every factor
/// satisfies |z_j|^2 (2j)^q < 1, and diverges otherwise (nullopt).
std::optional<double> neighborhood_sum(const ComplexPoint& z, double q);

/// Membership of z in the neighborhood K_q(R): the sum above converges and
/// is < R^2.
bool in_neighborhood(const ComplexPoint& z, double q, double R);

/// Cauchy-Schwarz growth constant (sum_alpha c_alpha^2 (2N)^{-q alpha})^{1/2}:
/// |HF(z)| <= growth_constant(F,q) * (sum_alpha (2N)^{q alpha} |z^alpha|^2)^{1/2}.
double growth_constant(const ChaosExpansion& F, double q);

}  // namespace levywn
