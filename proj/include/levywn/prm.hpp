#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "levywn/chaos.hpp"
#include "levywn/jump_basis.hpp"
#include "levywn/levy_measure.hpp"
#include "levywn/random.hpp"
#include "levywn/stats.hpp"

namespace levywn {

/// Axis-aligned box prod_i [lo_i, hi_i] in R^d, d <= 4.  The d-parameter
/// field machinery uses boxes anchored at the origin (prod [0, L_i]); the
/// Monte Carlo verification of the chaos basis needs windows straddling 0,
/// where the Hermite functions carry their mass.
struct Box {
    std::vector<double> lo;
    std::vector<double> hi;

    /// prod_i [0, L_i].
    static Box from_lengths(std::vector<double> lengths);
    /// [-L, L]^d.
    static Box symmetric(std::size_t d, double L);

    std::size_t dim() const { return lo.size(); }
    double volume() const;
    double length(std::size_t j) const { return hi[j] - lo[j]; }
};

/// Function on R^d x R_0 paired against the random measure.
using PointFunction = std::function<double(std::span<const double>, double)>;

/// One sampled realization of the Poisson random measure with intensity
/// Lebesgue x nu, restricted to jumps with |z| >= eps.
struct PointConfiguration {
    struct JumpPoint {
        std::array<double, 4> x{};  ///< first dim() coordinates are used
        double z = 0.0;
    };

    Box box;
    double eps = 0.0;
    std::vector<JumpPoint> points;
    double mass = 0.0;             ///< nu({|z| >= eps}) * vol(box)
    double truncation_var = 0.0;   ///< vol(box) * int_{|z|<eps} z^2 nu(dz)

    std::size_t dim() const { return box.dim(); }
};

/// Reusable sampler for a fixed (model, box, eps) triple; the per-draw cost
/// is O(point count).
class PrmSampler {
public:
    PrmSampler(const LevyMeasureModel& model, Box box, double eps);

    PointConfiguration sample(RandomSource& rng) const;

    double mass() const { return mass_; }
    double truncation_variance() const { return truncation_var_; }

private:
    Box box_;
    double eps_;
    double mass_;
    double truncation_var_;
    std::function<double(RandomSource&)> jump_;
};

/// Single draw; prefer PrmSampler for repeated sampling.
PointConfiguration sample_prm(const LevyMeasureModel& model, const Box& box, double eps,
                              RandomSource& rng);

/// <omega, f> = sum_i f(x_i, z_i).
double pair_raw(const PointConfiguration& config, const PointFunction& f);

/// Integral of f over box x {|z| >= eps} against Lebesgue x nu, using a
/// tensor Gauss-Legendre rule over the box.
double integrate_pi(const LevyMeasureModel& model, const Box& box, double eps,
                    const PointFunction& f, int nodes_per_axis = 32);

/// Compensated pairing <omega - pi, f>, compensator restricted to the
/// sampled jump sizes.  The overload with a precomputed compensator avoids
/// re-integrating in Monte Carlo loops.
double pair_compensated(const PointConfiguration& config, const LevyMeasureModel& model,
                        const PointFunction& f);
double pair_compensated(const PointConfiguration& config, const PointFunction& f,
                        double compensator);

/// d-parameter Levy field eta(x) = sum_{x_i <= x} z_i - vol([0,x]) *
/// int_{|z|>=eps} z nu(dz); x must lie in the box.
double eta_sample(const PointConfiguration& config, const LevyMeasureModel& model,
                  std::span<const double> x);

/// Pathwise Charlier kernel evaluation, orders 0..2.  Order 1 is the
/// compensated pairing of f; order 2 uses the polarized kernel
/// <C2, f (x) g> = <omega - pi, f> <omega - pi, g> - <omega, f g>.
double charlier_eval(const PointConfiguration& config, const LevyMeasureModel& model,
                     const PointFunction& f, const PointFunction& g, int order);

/// Pathwise K_alpha for |alpha| <= 2; jump-polynomial indices must lie
/// within the basis cap.
double k_alpha_eval(const PointConfiguration& config, const LevyMeasureModel& model,
                    const OrthonormalJumpBasis& basis, const MultiIndex& alpha);

/// Empirical vs. theoretical characteristic functional E[e^{i <omega,f>}].
struct CharFunctionalResult {
    std::complex<double> empirical;
    std::complex<double> theory;
    double std_error = 0.0;  ///< of |empirical - theory| (combined re/im)
    std::size_t n = 0;
};
CharFunctionalResult char_functional_check(const LevyMeasureModel& model, const Box& box,
                                           double eps, const PointFunction& f, std::size_t n,
                                           const RandomSource& rng);

/// Closed-form raw moment E[<omega,f>^n] for n in 1..4, from the composition
/// sum M_n = sum_{k=1}^n (n!/k!) sum_{compositions of n into k parts}
/// prod_j <pi, f^{a_j}>/a_j!.
double moment_formula(const LevyMeasureModel& model, const Box& box, const PointFunction& f,
                      int n);

/// Chaos expansion of eta(x): coefficient m * int_{[0,x]} zeta_k on the index
/// epsilon^{z(k,1)}, k <= K.
ChaosExpansion eta_chaos(const LevyMeasureModel& model, std::span<const double> x,
                         std::uint64_t K);

/// Chaos expansion of the white noise at x: coefficients m * zeta_k(x).
ChaosExpansion white_noise_chaos(const LevyMeasureModel& model, std::span<const double> x,
                                 std::uint64_t K);

/// Chaos expansion of the Poisson-measure noise at (x,z): coefficients
/// zeta_k(x) p_m(z) on epsilon^{z(k,m)}, k <= Ks, m <= Km.
ChaosExpansion prm_noise_chaos(const LevyMeasureModel& model, const OrthonormalJumpBasis& basis,
                               std::span<const double> x, double z, std::uint64_t Ks,
                               std::uint64_t Km);

/// Monte Carlo fold: accumulates estimator(config) over n replicates drawn
/// from per-sample split streams, merged deterministically.
MomentAccumulator mc_accumulate(const PrmSampler& sampler, const RandomSource& rng, std::size_t n,
                                const std::function<double(const PointConfiguration&)>& estimator);

}  // namespace levywn
