#include "levywn/jump_basis.hpp"

#include <cmath>
#include <stdexcept>

#include "levywn/hermite.hpp"
#include "levywn/multi_index.hpp"

namespace levywn {

double OrthonormalJumpBasis::eval(std::size_t m, double z) const {
    if (m < 1 || m > M) throw std::out_of_range("OrthonormalJumpBasis::eval: index out of range");
    const std::vector<double>& row = coeffs[m - 1];
    double acc = 0.0;
    for (std::size_t p = row.size(); p-- > 0;) acc = acc * z + row[p];
    return acc;
}

OrthonormalJumpBasis build_jump_basis(const LevyMeasureModel& model, std::size_t M) {
    if (M < 1) throw std::invalid_argument("build_jump_basis: M must be >= 1");

    // Hankel matrix of rho = z^2 nu over monomials 1, z, ..., z^{M-1}:
    // H[i][j] = rho-moment(i+j) = nu-moment(i+j+2).
    std::vector<double> rho_moment(2 * M - 1);
    for (std::size_t k = 0; k < rho_moment.size(); ++k) {
        rho_moment[k] = model.moment(static_cast<int>(k) + 2);
        if (!std::isfinite(rho_moment[k])) {
            throw std::runtime_error("build_jump_basis: non-finite moment");
        }
    }

    // Cholesky H = L L^T with early termination at the numerical rank.
    const double rank_tol = 1e-12;
    std::vector<std::vector<double>> L(M, std::vector<double>(M, 0.0));
    std::size_t rank = 0;
    double max_pivot = 0.0;
    for (std::size_t j = 0; j < M; ++j) {
        double diag = rho_moment[2 * j];
        for (std::size_t p = 0; p < j; ++p) diag -= L[j][p] * L[j][p];
        max_pivot = std::max(max_pivot, std::abs(rho_moment[2 * j]));
        if (diag <= rank_tol * max_pivot) break;
        L[j][j] = std::sqrt(diag);
        for (std::size_t i = j + 1; i < M; ++i) {
            double v = rho_moment[i + j];
            for (std::size_t p = 0; p < j; ++p) v -= L[i][p] * L[j][p];
            L[i][j] = v / L[j][j];
        }
        rank = j + 1;
    }
    if (rank == 0) throw std::runtime_error("build_jump_basis: Gram matrix has no positive pivot");

    // Rows of L^{-1} give the monomial coefficients of the L^2(rho)-orthonormal
    // polynomials l_0..l_{rank-1}; p_m(z) = z * l_{m-1}(z).
    OrthonormalJumpBasis basis;
    basis.M = rank;
    basis.requested = M;
    basis.capped = rank < M;
    basis.m2sqrt = model.m();
    basis.coeffs.assign(rank, std::vector<double>(rank + 1, 0.0));
    for (std::size_t m = 0; m < rank; ++m) {
        // The m-th row r of L^{-1} satisfies r L = e_m^T; back-substitute
        // column by column from jj = m downward.
        std::vector<double> r(m + 1, 0.0);
        for (std::size_t jj = m + 1; jj-- > 0;) {
            double v = (jj == m) ? 1.0 : 0.0;
            for (std::size_t p = jj + 1; p <= m; ++p) v -= r[p] * L[p][jj];
            r[jj] = v / L[jj][jj];
        }
        for (std::size_t p = 0; p <= m; ++p) basis.coeffs[m][p + 1] = r[p];
    }
    return basis;
}

double delta_k(const OrthonormalJumpBasis& basis, std::uint64_t k, std::span<const double> x,
               double z) {
    const auto [i, j] = cantor_unpair(k);
    if (j > basis.M) {
        throw std::out_of_range("delta_k: jump-polynomial index beyond basis cap");
    }
    return tensor_hermite(i, x) * basis.eval(j, z);
}

std::vector<double> jump_basis_gram(const OrthonormalJumpBasis& basis,
                                    const LevyMeasureModel& model) {
    const std::size_t M = basis.M;
    std::vector<double> gram(M * M, 0.0);
    for (std::size_t i = 1; i <= M; ++i) {
        for (std::size_t j = i; j <= M; ++j) {
            const double v = model.integrate(
                [&](double z) { return basis.eval(i, z) * basis.eval(j, z); }, 0.0);
            gram[(i - 1) * M + (j - 1)] = v;
            gram[(j - 1) * M + (i - 1)] = v;
        }
    }
    return gram;
}

}  // namespace levywn
