#pragma once

#include <functional>
#include <vector>

namespace levywn {

/// Nodes and weights of a one-dimensional quadrature rule.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    double apply(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

/// n-point Gauss-Legendre rule on [-1,1].
QuadratureRule gauss_legendre(int n);

/// n-point Gauss-Legendre rule mapped to [a,b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre rule: `panels` equal subintervals of [a,b],
/// n points each.
QuadratureRule composite_gauss_legendre(int n, double a, double b, int panels);

/// n-point Gauss-Hermite rule for integrals of f(t) e^{-t^2} over the line;
/// the weight is folded in, so apply() integrates f(t) e^{-t^2} dt.
QuadratureRule gauss_hermite(int n);

/// Geometrically graded composite rule on [a,b] (0 <= a < b): panels grow by
/// `growth` from a, n Gauss-Legendre points each.  Suited to integrands with
/// an endpoint singularity at a or scales spanning several decades.
QuadratureRule geometric_gauss_legendre(int n, double a, double b, double first_width,
                                        double growth = 2.0);

/// Integrate f over [a,b] with panel doubling until two successive composite
/// rules agree to rel_tol (plus abs floor).  Throws std::runtime_error if no
/// convergence within max_panels.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-10, int max_panels = 4096);

}  // namespace levywn
