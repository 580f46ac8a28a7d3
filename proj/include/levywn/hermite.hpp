#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace levywn {

/// Value of the n-th L^2(R)-orthonormal Hermite function (harmonic oscillator
/// eigenfunctions, 1-based): xi_1(t) = pi^{-1/4} exp(-t^2/2), then the stable
/// three-term recurrence psi_n = t sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2}
/// with xi_n = psi_{n-1}.
double hermite_fn(std::uint64_t n, double t);

/// All of xi_1(t) .. xi_nmax(t) in one recurrence sweep; out[n-1] = xi_n(t).
void hermite_fn_all(std::uint64_t nmax, double t, std::span<double> out);

/// d-fold tensor Hermite function zeta_k(x) = xi_{i_1}(x_1) ... xi_{i_d}(x_d)
/// where (i_1..i_d) is the graded-lexicographic tuple of k.
double tensor_hermite(std::uint64_t k, std::span<const double> x);

/// Integral of xi_n over [a,b] (composite Gauss-Legendre sized to resolve the
/// oscillation of xi_n).
double hermite_fn_integral(std::uint64_t n, double a, double b);

/// Integral of zeta_k over the rectangle [0,x_1] x ... x [0,x_d]; the tensor
/// structure reduces it to a product of one-dimensional integrals.
double tensor_hermite_box_integral(std::uint64_t k, std::span<const double> x);

}  // namespace levywn
