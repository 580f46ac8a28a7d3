#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "levywn/levy_measure.hpp"

namespace levywn {

/// Polynomials p_1..p_M orthonormal in L^2(nu), built by orthogonalizing
/// monomials in L^2(rho), rho(dz) = z^2 nu(dz), and multiplying by z.  Every
/// p_m has exact degree m, p_m(0) = 0, and p_1(z) = z/m with
/// m = (second moment of nu)^{1/2}.
///
/// When the Hankel moment matrix of rho is rank deficient (atomic nu with r
/// atoms yields rank r), the basis is capped at the numerical rank and
/// `capped` records the requested size.
struct OrthonormalJumpBasis {
    std::size_t M = 0;              ///< number of polynomials actually built
    std::size_t requested = 0;      ///< M asked for
    bool capped = false;
    double m2sqrt = 0.0;            ///< m = ||z||_{L^2(nu)}
    /// coeffs[m-1][p] is the coefficient of z^p in p_m (p = 0..M); the
    /// constant term is always 0.
    std::vector<std::vector<double>> coeffs;

    /// Evaluate p_m(z) from the stored row (Horner form); m is 1-based.
    double eval(std::size_t m, double z) const;
};

/// Build the jump basis from the Hankel moment matrix of rho = z^2 nu via
/// Cholesky, with rank tolerance 1e-12 relative to the largest pivot.
/// Requires moments of nu up to order 2M + 2.
OrthonormalJumpBasis build_jump_basis(const LevyMeasureModel& model, std::size_t M);

/// Combined basis function delta_k(x,z) = zeta_i(x) p_j(z), k = z(i,j) under
/// the Cantor pairing.  Throws if j exceeds the basis cap.
double delta_k(const OrthonormalJumpBasis& basis, std::uint64_t k, std::span<const double> x,
               double z);

/// Gram matrix (p_i, p_j)_{L^2(nu)} for diagnostics; entry (i,j) at
/// [i*M + j].
std::vector<double> jump_basis_gram(const OrthonormalJumpBasis& basis,
                                    const LevyMeasureModel& model);

}  // namespace levywn
