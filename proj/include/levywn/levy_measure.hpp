#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "levywn/random.hpp"

namespace levywn {

/// One atom of a purely atomic Levy measure: mass w at jump size z != 0.
struct Atom {
    double z = 0.0;
    double w = 0.0;
};

/// Levy measure nu on R \ {0} with moment queries and jump sampling.  Two
/// variants: a finite list of atoms, or a named density on a bounded support.
/// The second moment must exist and be positive; higher moments are required
/// only up to the order actually queried.
class LevyMeasureModel {
public:
    static LevyMeasureModel from_atoms(std::vector<Atom> atoms);

    /// Density variant.  expr_id selects a built-in density (see
    /// density_registry); support is [a,b]; nodes controls the resolution of
    /// the composite quadrature and of the sampling table.
    static LevyMeasureModel from_density(const std::string& expr_id, double a, double b,
                                         int nodes = 256);

    bool atomic() const { return density_ == nullptr; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::string& expr_id() const { return expr_id_; }
    double support_lo() const { return support_lo_; }
    double support_hi() const { return support_hi_; }
    int nodes() const { return nodes_; }

    /// k-th moment of nu, k >= 2 (lower moments need not exist).
    /// Throws std::runtime_error when the quadrature fails to converge.
    double moment(int k) const;

    /// m^2 = second moment; m = L^2(nu) norm of z.
    double m2() const { return moment(2); }
    double m() const;

    /// nu({|z| >= eps}).
    double mass_above(double eps) const;

    /// Integral of z over {|z| >= eps} (the compensator density).
    double mean_jump_above(double eps) const;

    /// Omitted-jump variance: integral of z^2 over {|z| < eps}.
    double truncated_variance(double eps) const;

    /// Integral of g against nu restricted to {|z| >= eps}.
    double integrate(const std::function<double(double)>& g, double eps) const;

    /// One jump drawn from nu restricted to {|z| >= eps}, normalized.
    /// For repeated draws prefer make_jump_sampler().
    double sample_jump(double eps, RandomSource& rng) const;

    /// Precomputed sampler for nu restricted to {|z| >= eps}.
    std::function<double(RandomSource&)> make_jump_sampler(double eps) const;

    /// Built-in density lookup; throws on unknown id.
    static std::function<double(double)> density_registry(const std::string& expr_id);

private:
    LevyMeasureModel() = default;
    void validate() const;

    std::vector<Atom> atoms_;
    std::function<double(double)> density_;
    std::string expr_id_;
    double support_lo_ = 0.0;
    double support_hi_ = 0.0;
    int nodes_ = 0;
};

}  // namespace levywn
