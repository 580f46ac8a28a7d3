#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "levywn/chaos.hpp"
#include "levywn/levy_measure.hpp"
#include "levywn/prm.hpp"

namespace levywn {

/// Reference domains with known Dirichlet Green functions.  Each domain is
/// placed inside the positive orthant so the sampling boxes prod [0,L_i] of
/// the PRM machinery can cover it: the unit disk is centered at (1,1), the
/// unit ball at (1,1,1), interval and hypercube start at the origin.
class Domain {
public:
    enum class Kind { interval, disk, ball, hypercube };

    static Domain unit_interval();
    static Domain unit_disk();
    static Domain unit_ball();
    /// [0,1]^d with the eigen-series Green function truncated at
    /// series_order modes per axis.
    static Domain unit_hypercube(std::size_t d, int series_order = 40);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    int series_order() const { return series_order_; }
    const std::vector<double>& center() const { return center_; }

    /// Smallest box prod [0,L_i] containing the closure of D.
    Box bounding_box() const;

    bool contains(std::span<const double> x) const;          ///< open interior
    double boundary_distance(std::span<const double> x) const;

    /// Green function of -Laplace with zero Dirichlet data; 0 whenever either
    /// argument is outside the closure of D.  Throws std::domain_error for
    /// x = y when d >= 2 (the pole).
    double green(std::span<const double> x, std::span<const double> y) const;

    /// int_D G(x,y) dy (the solution of -Laplace w = 1, w|boundary = 0).
    double green_integral(std::span<const double> x) const;

    /// int_D G(x,y)^2 dy; finite for d <= 3.  Throws std::domain_error for
    /// d >= 4 where the integral does not converge.
    double green_l2sq(std::span<const double> x) const;

    /// Upper bound on the Parseval tail sum_{|n|_inf > N} lambda_n^{-2} of the
    /// truncated hypercube series (0 for the closed-form domains).
    double series_tail_bound() const;

private:
    struct SeriesTables;
    Domain(Kind kind, std::size_t dim, int series_order);

    double green_hypercube(std::span<const double> x, std::span<const double> y) const;
    double parseval_l2sq(std::span<const double> x) const;  ///< truncated sum, any d

    Kind kind_;
    std::size_t dim_;
    int series_order_ = 0;
    std::vector<double> center_;
    std::shared_ptr<const SeriesTables> tables_;

    friend std::vector<std::pair<double, double>> divergence_profile(std::size_t,
                                                                     std::span<const double>,
                                                                     std::span<const double>);
};

/// Chaos solution of Delta U = -white noise at a point.
struct SolutionField {
    std::vector<double> x;
    ChaosExpansion chaos;                 ///< support on {epsilon^{z(k,1)}: k <= K}
    std::uint64_t K = 0;
    std::optional<double> variance_exact; ///< m^2 int_D G^2, set when d <= 3
};

/// Single chaos coefficient c_k(x) = m int_D G(x,y) zeta_k(y) dy.
double chaos_coefficient(const Domain& domain, const LevyMeasureModel& model, std::uint64_t k,
                         std::span<const double> x);

/// Truncated chaos expansion of the solution at x.
SolutionField solve_chaos(const Domain& domain, const LevyMeasureModel& model,
                          std::span<const double> x, std::uint64_t K);

/// Hermite transform of the truncated solution at the point z.
std::complex<double> hermite_solution(const Domain& domain, const LevyMeasureModel& model,
                                      std::span<const double> x, const ComplexPoint& z,
                                      std::uint64_t K);

/// Pathwise solution from one PRM realization:
/// sum_i G(x, x_i) z_i - (int_{|z|>=eps} z nu) int_D G(x,y) dy.
/// Requires d <= 3 and D inside the configuration box.
double solve_mc(const Domain& domain, const LevyMeasureModel& model,
                const PointConfiguration& config, std::span<const double> x);

/// m^2 int_D G^2(x,y) dy, d <= 3.
double variance_exact(const Domain& domain, const LevyMeasureModel& model,
                      std::span<const double> x);

/// Max over an interior lattice of |Delta_h c_k + m zeta_k| with the standard
/// second-order stencil, plus the O(h^2) scale the residual is expected to
/// track.
struct ResidualReport {
    double max_residual = 0.0;
    double h = 0.0;
    double reference_scale = 0.0;  ///< (h^2/12) max |Delta_h (m zeta_k)|
};
ResidualReport laplacian_residual(const Domain& domain, const LevyMeasureModel& model,
                                  std::uint64_t k, double h);

/// I(delta) = int_{D \ B_delta(x)} G^2(x,y) dy on the reference domain of
/// dimension d (interval, disk, ball, hypercube for d = 4, series order 64),
/// for a decreasing list of radii.  Consecutive values share their shell
/// quadratures, so differences I(delta_{i+1}) - I(delta_i) are exactly the
/// shell integrals.
std::vector<std::pair<double, double>> divergence_profile(std::size_t d,
                                                          std::span<const double> x,
                                                          std::span<const double> deltas);

}  // namespace levywn
