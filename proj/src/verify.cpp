#include "levywn/verify.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "levywn/chaos.hpp"
#include "levywn/hermite.hpp"
#include "levywn/jump_basis.hpp"
#include "levywn/levy_measure.hpp"
#include "levywn/poisson_eq.hpp"
#include "levywn/prm.hpp"
#include "levywn/quadrature.hpp"

namespace levywn {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

LevyMeasureModel symmetric_pair() {
    return LevyMeasureModel::from_atoms({{-1.0, 1.0}, {1.0, 1.0}});
}

LevyMeasureModel five_atoms() {
    return LevyMeasureModel::from_atoms(
        {{-2.0, 0.2}, {-1.0, 0.5}, {0.5, 1.0}, {1.0, 0.5}, {2.0, 0.1}});
}

LevyMeasureModel unit_atom() { return LevyMeasureModel::from_atoms({{1.0, 1.0}}); }

// ---------------------------------------------------------------------------
// 1. Jump-basis orthonormality
// ---------------------------------------------------------------------------

CheckResult check_jump_basis(std::uint64_t) {
    CheckResult result;
    result.name = "jump-basis-orthonormality";

    double worst_gram = 0.0, worst_moment = 0.0;
    bool p1_exact = true;
    for (const LevyMeasureModel& model : {symmetric_pair(), five_atoms()}) {
        const std::size_t M = model.atoms().size();
        const OrthonormalJumpBasis basis = build_jump_basis(model, M);
        const std::vector<double> gram = jump_basis_gram(basis, model);
        for (std::size_t i = 0; i < basis.M; ++i) {
            for (std::size_t j = 0; j < basis.M; ++j) {
                const double target = (i == j) ? 1.0 : 0.0;
                worst_gram = std::max(worst_gram, std::abs(gram[i * basis.M + j] - target));
            }
        }
        // p_1 = z/m at the coefficient level.
        if (basis.coeffs[0][0] != 0.0 || basis.coeffs[0][1] != 1.0 / basis.m2sqrt) {
            p1_exact = false;
        }
        for (std::size_t m = 1; m <= basis.M; ++m) {
            const double v = model.integrate(
                [&](double z) { return z * basis.eval(m, z); }, 0.0);
            const double target = (m == 1) ? basis.m2sqrt : 0.0;
            worst_moment = std::max(worst_moment, std::abs(v - target));
        }
    }
    result.passed = worst_gram < 1e-10 && worst_moment < 1e-10 && p1_exact;
    result.detail = "max|Gram-I|=" + fmt(worst_gram) + " (tol 1e-10), max|(z,p_m)-m d_{m1}|=" +
                    fmt(worst_moment) + " (tol 1e-10), p1=z/m exact: " +
                    (p1_exact ? "yes" : "no");
    return result;
}

// ---------------------------------------------------------------------------
// 2. Ito isometry
// ---------------------------------------------------------------------------

CheckResult check_ito_isometry(std::uint64_t seed) {
    CheckResult result;
    result.name = "ito-isometry";

    const LevyMeasureModel model = five_atoms();
    const OrthonormalJumpBasis basis = build_jump_basis(model, 3);
    const Box window = Box::symmetric(1, 4.0);
    const std::size_t n = 100000;

    struct NamedFn {
        std::string name;
        PointFunction f;
    };
    const auto chi01 = [](double y) { return (y >= 0.0 && y <= 1.0) ? 1.0 : 0.0; };
    std::vector<NamedFn> fns;
    fns.push_back({"z_on_unit", [&](std::span<const double> x, double z) {
                       return chi01(x[0]) * z;
                   }});
    fns.push_back({"delta_1", [&](std::span<const double> x, double z) {
                       return delta_k(basis, 1, x, z);
                   }});
    fns.push_back({"sin_z2", [](std::span<const double> x, double z) {
                       return std::sin(2.0 * M_PI * x[0]) * z * z;
                   }});
    fns.push_back({"yz_on_unit", [&](std::span<const double> x, double z) {
                       return chi01(x[0]) * x[0] * z;
                   }});
    fns.push_back({"cos_mix", [](std::span<const double> x, double z) {
                       return std::cos(x[0]) * (z + 0.5 * z * z);
                   }});
    // The indicator factors are integrated over their own sub-box so no
    // quadrature panel straddles a discontinuity.
    const Box unit = Box::from_lengths({1.0});
    std::vector<double> theory(fns.size()), comp(fns.size());
    for (std::size_t i = 0; i < fns.size(); ++i) {
        const Box& region = (i == 0 || i == 3) ? unit : window;
        theory[i] = integrate_pi(model, region, 0.0,
                                 [&](std::span<const double> x, double z) {
                                     const double v = fns[i].f(x, z);
                                     return v * v;
                                 });
        comp[i] = integrate_pi(model, region, 0.0, fns[i].f);
    }

    const PrmSampler sampler(model, window, 0.0);
    const RandomSource base(seed);
    std::vector<MomentAccumulator> acc(fns.size());
    for (std::size_t i = 0; i < n; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration config = sampler.sample(stream);
        for (std::size_t j = 0; j < fns.size(); ++j) {
            acc[j].add(pair_compensated(config, fns[j].f, comp[j]));
        }
    }

    double worst_dev = 0.0;
    for (std::size_t j = 0; j < fns.size(); ++j) {
        const double dev = std::abs(acc[j].variance() - theory[j]) /
                           std::max(acc[j].variance_se(), 1e-300);
        worst_dev = std::max(worst_dev, dev);
        McReportRow row;
        row.quantity = "isometry_var_" + fns[j].name;
        row.estimate = acc[j].variance();
        row.theory = theory[j];
        row.std_error = acc[j].variance_se();
        row.n_samples = n;
        row.seed = seed;
        result.rows.push_back(row);
    }
    result.passed = worst_dev < 3.0;
    result.detail = "5 test functions, worst |var - ||f||^2| = " + fmt(worst_dev) +
                    " SE (tol 3 SE at n=1e5)";
    return result;
}

// ---------------------------------------------------------------------------
// 3. Charlier orthogonality
// ---------------------------------------------------------------------------

CheckResult check_charlier_orthogonality(std::uint64_t seed) {
    CheckResult result;
    result.name = "charlier-orthogonality";

    const LevyMeasureModel model = five_atoms();
    const OrthonormalJumpBasis basis = build_jump_basis(model, 3);
    const Box window = Box::symmetric(1, 5.0);
    const std::size_t n = 100000;
    const std::size_t L = 6;  // delta indices

    std::vector<MultiIndex> alphas = {MultiIndex()};
    for (std::size_t l = 1; l <= L; ++l) alphas.push_back(MultiIndex::unit(l));
    for (std::size_t a = 1; a <= L; ++a) {
        for (std::size_t b = a; b <= L; ++b) {
            alphas.push_back(MultiIndex::unit(a) + MultiIndex::unit(b));
        }
    }
    const std::size_t A = alphas.size();

    std::vector<double> comp(L + 1, 0.0);
    for (std::size_t l = 1; l <= L; ++l) {
        comp[l] = integrate_pi(model, window, 0.0,
                               [&](std::span<const double> x, double z) {
                                   return delta_k(basis, l, x, z);
                               });
    }
    // Decompose each alpha into its one or two active positions.
    std::vector<std::pair<std::size_t, std::size_t>> parts(A, {0, 0});
    for (std::size_t a = 0; a < A; ++a) {
        std::size_t first = 0, second = 0;
        for (std::size_t p = 1; p <= alphas[a].index(); ++p) {
            for (unsigned rep = 0; rep < alphas[a].at(p); ++rep) {
                (first == 0 ? first : second) = p;
            }
        }
        parts[a] = {first, second};
    }

    const PrmSampler sampler(model, window, 0.0);
    const RandomSource base(seed);
    std::vector<MomentAccumulator> gram(A * A);
    std::vector<double> d(L + 1), c1(L + 1), K(A);
    std::vector<double> cache;  // per-point delta values
    for (std::size_t i = 0; i < n; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration config = sampler.sample(stream);
        const std::size_t npts = config.points.size();
        cache.assign(npts * (L + 1), 0.0);
        for (std::size_t p = 0; p < npts; ++p) {
            const std::span<const double> x(config.points[p].x.data(), 1);
            for (std::size_t l = 1; l <= L; ++l) {
                cache[p * (L + 1) + l] = delta_k(basis, l, x, config.points[p].z);
            }
        }
        for (std::size_t l = 1; l <= L; ++l) {
            double s = 0.0;
            for (std::size_t p = 0; p < npts; ++p) s += cache[p * (L + 1) + l];
            c1[l] = s - comp[l];
        }
        for (std::size_t a = 0; a < A; ++a) {
            const auto [j, l] = parts[a];
            if (j == 0) {
                K[a] = 1.0;
            } else if (l == 0) {
                K[a] = c1[j];
            } else {
                double mixed = 0.0;
                for (std::size_t p = 0; p < npts; ++p) {
                    mixed += cache[p * (L + 1) + j] * cache[p * (L + 1) + l];
                }
                K[a] = c1[j] * c1[l] - mixed;
            }
        }
        for (std::size_t a = 0; a < A; ++a) {
            for (std::size_t b = a; b < A; ++b) {
                gram[a * A + b].add(K[a] * K[b]);
            }
        }
    }

    double worst_dev = 0.0;
    std::string worst_entry;
    for (std::size_t a = 0; a < A; ++a) {
        for (std::size_t b = a; b < A; ++b) {
            const MomentAccumulator& acc = gram[a * A + b];
            const double target = (a == b) ? alphas[a].factorial() : 0.0;
            const double se = acc.mean_se();
            if (se == 0.0) continue;  // deterministic (0,0) entry
            const double dev = std::abs(acc.mean() - target) / se;
            if (dev > worst_dev) {
                worst_dev = dev;
                worst_entry = alphas[a].to_string() + "x" + alphas[b].to_string();
            }
        }
    }
    McReportRow row;
    row.quantity = "charlier_gram_worst_dev_se";
    row.estimate = worst_dev;
    row.theory = 0.0;
    row.std_error = 1.0;
    row.n_samples = n;
    row.seed = seed;
    result.rows.push_back(row);

    result.passed = worst_dev < 3.0;
    result.detail = std::to_string(A) + "x" + std::to_string(A) +
                    " Gram vs diag(alpha!), worst entry " + worst_entry + " at " +
                    fmt(worst_dev) + " SE (tol 3 SE at n=1e5)";
    return result;
}

// ---------------------------------------------------------------------------
// 4. Characteristic functional and moment formula
// ---------------------------------------------------------------------------

CheckResult check_char_functional_moments(std::uint64_t seed) {
    CheckResult result;
    result.name = "char-functional-moments";

    const LevyMeasureModel model = unit_atom();
    const Box box = Box::from_lengths({1.0});
    const std::size_t n = 100000;
    const PointFunction chi = [](std::span<const double>, double) { return 1.0; };

    // Closed-form targets: raw moments of a unit Poisson count.
    const double poisson_raw[5] = {0.0, 1.0, 2.0, 5.0, 15.0};
    double worst_formula = 0.0;
    for (int p = 1; p <= 4; ++p) {
        worst_formula =
            std::max(worst_formula, std::abs(moment_formula(model, box, chi, p) - poisson_raw[p]));
    }

    const PrmSampler sampler(model, box, 0.0);
    const RandomSource base(seed);
    std::vector<MomentAccumulator> acc(5);
    for (std::size_t i = 0; i < n; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration config = sampler.sample(stream);
        const double count = pair_raw(config, chi);
        double power = 1.0;
        for (int p = 1; p <= 4; ++p) {
            power *= count;
            acc[p].add(power);
        }
    }
    double worst_mc = 0.0;
    for (int p = 1; p <= 4; ++p) {
        const double dev =
            std::abs(acc[p].mean() - poisson_raw[p]) / std::max(acc[p].mean_se(), 1e-300);
        worst_mc = std::max(worst_mc, dev);
        McReportRow row;
        row.quantity = "raw_moment_" + std::to_string(p);
        row.estimate = acc[p].mean();
        row.theory = poisson_raw[p];
        row.std_error = acc[p].mean_se();
        row.n_samples = n;
        row.seed = seed;
        result.rows.push_back(row);
    }

    // Characteristic functional at f = pi * chi: exp(e^{i pi} - 1) = exp(-2).
    const PointFunction f_pi = [](std::span<const double>, double) { return M_PI; };
    const CharFunctionalResult cf =
        char_functional_check(model, box, 0.0, f_pi, n, RandomSource(seed + 1));
    const double cf_dev = std::abs(cf.empirical - cf.theory) / std::max(cf.std_error, 1e-300);
    const double theory_err = std::abs(cf.theory - std::exp(-2.0));
    McReportRow row;
    row.quantity = "char_functional_re";
    row.estimate = cf.empirical.real();
    row.theory = cf.theory.real();
    row.std_error = cf.std_error;
    row.n_samples = n;
    row.seed = seed + 1;
    result.rows.push_back(row);

    result.passed = worst_formula < 1e-10 && worst_mc < 3.0 && cf_dev < 3.0 && theory_err < 1e-12;
    result.detail = "moment formula max err " + fmt(worst_formula) +
                    " (tol 1e-10); MC worst " + fmt(worst_mc) + " SE; char functional " +
                    fmt(cf_dev) + " SE, |theory - e^{-2}| = " + fmt(theory_err);
    return result;
}

// ---------------------------------------------------------------------------
// 5. Wick / Hermite homomorphism
// ---------------------------------------------------------------------------

ChaosExpansion random_sparse(RandomSource& rng) {
    ChaosExpansion F;
    const std::size_t terms = 1 + rng.next() % 50;
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<unsigned> e(1 + rng.next() % 5, 0u);
        unsigned budget = rng.next() % 7;
        for (std::size_t i = 0; i < e.size() && budget > 0; ++i) {
            const unsigned v = rng.next() % (budget + 1);
            e[i] = v;
            budget -= v;
        }
        F.add(MultiIndex(std::move(e)), rng.uniform(-1.0, 1.0));
    }
    return F;
}

CheckResult check_wick_hermite(std::uint64_t seed) {
    CheckResult result;
    result.name = "wick-hermite-homomorphism";

    RandomSource rng(seed);
    double worst_hom = 0.0, worst_alg = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const ChaosExpansion F = random_sparse(rng);
        const ChaosExpansion G = random_sparse(rng);
        const ChaosExpansion H = random_sparse(rng);

        ComplexPoint z;
        for (std::size_t j = 0; j < 6; ++j) {
            z.entries.emplace_back(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
        }
        const std::complex<double> lhs = hermite_transform(wick(F, G), z);
        const std::complex<double> rhs = hermite_transform(F, z) * hermite_transform(G, z);
        worst_hom = std::max(worst_hom,
                             std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0}));

        // Unit, commutativity, associativity at the coefficient level.
        const ChaosExpansion unit_err = wick(F, ChaosExpansion::constant(1.0)) - F;
        const ChaosExpansion comm_err = wick(F, G) - wick(G, F);
        const ChaosExpansion assoc_err = wick(wick(F, G), H) - wick(F, wick(G, H));
        for (const ChaosExpansion* err : {&unit_err, &comm_err, &assoc_err}) {
            for (const auto& [alpha, c] : err->terms()) {
                (void)alpha;
                worst_alg = std::max(worst_alg, std::abs(c));
            }
        }
    }
    result.passed = worst_hom < 1e-12 && worst_alg < 1e-12;
    result.detail = "100 random pairs: worst |H(F<>G) - HF HG| rel = " + fmt(worst_hom) +
                    ", worst algebra-law coefficient error = " + fmt(worst_alg) +
                    " (tol 1e-12)";
    return result;
}

// ---------------------------------------------------------------------------
// 6. White-noise derivative
// ---------------------------------------------------------------------------

CheckResult check_white_noise_derivative(std::uint64_t) {
    CheckResult result;
    result.name = "white-noise-derivative";

    const LevyMeasureModel model = symmetric_pair();
    const double h = 0.01;
    const auto d1 = [&](const std::function<double(double)>& g, double t) {
        return (-g(t + 2 * h) + 8 * g(t + h) - 8 * g(t - h) + g(t - 2 * h)) / (12 * h);
    };

    double worst = 0.0;
    // d = 1.
    for (std::uint64_t k = 1; k <= 20; ++k) {
        for (double x0 : {0.3, 0.8}) {
            const auto coeff = [&](double t) {
                const double x[1] = {t};
                return eta_chaos(model, std::span<const double>(x, 1), k)
                    .coefficient(MultiIndex::unit(cantor_pair(k, 1)));
            };
            const double x[1] = {x0};
            const double target =
                white_noise_chaos(model, std::span<const double>(x, 1), k)
                    .coefficient(MultiIndex::unit(cantor_pair(k, 1)));
            worst = std::max(worst, std::abs(d1(coeff, x0) - target));
        }
    }
    // d = 2: mixed partial.
    for (std::uint64_t k = 1; k <= 20; ++k) {
        const double x0 = 0.4, y0 = 0.55;
        const auto coeff2 = [&](double a, double b) {
            const double x[2] = {a, b};
            return eta_chaos(model, std::span<const double>(x, 2), k)
                .coefficient(MultiIndex::unit(cantor_pair(k, 1)));
        };
        const double mixed =
            d1([&](double a) { return d1([&](double b) { return coeff2(a, b); }, y0); }, x0);
        const double x[2] = {x0, y0};
        const double target = white_noise_chaos(model, std::span<const double>(x, 2), k)
                                  .coefficient(MultiIndex::unit(cantor_pair(k, 1)));
        worst = std::max(worst, std::abs(mixed - target));
    }
    result.passed = worst < 1e-6;
    result.detail = "k <= 20, d <= 2: worst |FD mixed partial - noise coefficient| = " +
                    fmt(worst) + " (tol 1e-6)";
    return result;
}

// ---------------------------------------------------------------------------
// 7. Stochastic Poisson solution in d = 1
// ---------------------------------------------------------------------------

CheckResult check_poisson_solution_1d(std::uint64_t seed) {
    CheckResult result;
    result.name = "poisson-solution-1d";

    const LevyMeasureModel model = symmetric_pair();  // m^2 = 2
    const Domain dom = Domain::unit_interval();
    const double x[1] = {0.5};
    const std::size_t n = 100000;

    const SolutionField field = solve_chaos(dom, model, x, 200);
    const double target = model.m2() / 48.0;
    const double partial = l2_norm(field.chaos) * l2_norm(field.chaos);
    const double gap = std::abs(partial - target) / target;

    const PrmSampler sampler(model, Box::from_lengths({1.0}), 0.0);
    const MomentAccumulator acc =
        mc_accumulate(sampler, RandomSource(seed), n, [&](const PointConfiguration& c) {
            return solve_mc(dom, model, c, x);
        });
    const double mean_dev = std::abs(acc.mean()) / std::max(acc.mean_se(), 1e-300);
    const double var_dev =
        std::abs(acc.variance() - target) / std::max(acc.variance_se(), 1e-300);

    McReportRow row;
    row.quantity = "solution_variance_1d";
    row.estimate = acc.variance();
    row.theory = target;
    row.std_error = acc.variance_se();
    row.n_samples = n;
    row.seed = seed;
    result.rows.push_back(row);

    result.passed = gap < 0.01 && mean_dev < 3.0 && var_dev < 3.0;
    result.detail = "partial variance (K=200) off m^2/48 by " + fmt(100.0 * gap) +
                    "% (tol 1%); MC mean " + fmt(mean_dev) + " SE, MC variance " + fmt(var_dev) +
                    " SE (tol 3 SE)";
    return result;
}

// ---------------------------------------------------------------------------
// 8. d = 3 unit ball variance
// ---------------------------------------------------------------------------

CheckResult check_ball_variance(std::uint64_t seed) {
    CheckResult result;
    result.name = "ball-variance";

    const LevyMeasureModel model = unit_atom();  // m^2 = 1
    const Domain dom = Domain::unit_ball();
    const std::vector<double> center = dom.center();
    const std::size_t n = 100000;

    const double exact = variance_exact(dom, model, center);
    const double target = 1.0 / (12.0 * M_PI);
    const double quad_err = std::abs(exact - target);

    const PrmSampler sampler(model, Box::from_lengths({2.0, 2.0, 2.0}), 0.0);
    const MomentAccumulator acc =
        mc_accumulate(sampler, RandomSource(seed), n, [&](const PointConfiguration& c) {
            return solve_mc(dom, model, c, center);
        });
    const double var_dev = std::abs(acc.variance() - target) / std::max(acc.variance_se(), 1e-300);

    McReportRow row;
    row.quantity = "solution_variance_ball";
    row.estimate = acc.variance();
    row.theory = target;
    row.std_error = acc.variance_se();
    row.n_samples = n;
    row.seed = seed;
    result.rows.push_back(row);

    result.passed = quad_err < 1e-6 && var_dev < 3.0;
    result.detail = "variance_exact vs 1/(12 pi): err " + fmt(quad_err) +
                    " (tol 1e-6); MC variance " + fmt(var_dev) + " SE (tol 3 SE at n=1e5)";
    return result;
}

// ---------------------------------------------------------------------------
// 9. Coefficient-wise PDE residual
// ---------------------------------------------------------------------------

CheckResult check_pde_residual(std::uint64_t) {
    CheckResult result;
    result.name = "pde-residual";

    const LevyMeasureModel model = symmetric_pair();
    double worst_ratio_err = 0.0;
    std::ostringstream detail;

    for (std::uint64_t k = 1; k <= 5; ++k) {
        const ResidualReport coarse =
            laplacian_residual(Domain::unit_interval(), model, k, 1.0 / 32.0);
        const ResidualReport fine =
            laplacian_residual(Domain::unit_interval(), model, k, 1.0 / 64.0);
        const double ratio = coarse.max_residual / fine.max_residual;
        worst_ratio_err = std::max(worst_ratio_err, std::abs(ratio - 4.0) / 4.0);
    }
    detail << "d=1 worst O(h^2) ratio error " << fmt(100.0 * worst_ratio_err) << "%";

    double worst_ratio_err_2d = 0.0;
    for (std::uint64_t k = 1; k <= 5; ++k) {
        const ResidualReport coarse = laplacian_residual(Domain::unit_disk(), model, k, 0.05);
        const ResidualReport fine = laplacian_residual(Domain::unit_disk(), model, k, 0.025);
        const double ratio = coarse.max_residual / fine.max_residual;
        worst_ratio_err_2d = std::max(worst_ratio_err_2d, std::abs(ratio - 4.0) / 4.0);
    }
    detail << "; d=2 worst " << fmt(100.0 * worst_ratio_err_2d) << "% (tol 20%)";

    result.passed = worst_ratio_err < 0.2 && worst_ratio_err_2d < 0.2;
    result.detail = detail.str();
    return result;
}

// ---------------------------------------------------------------------------
// 10. Dimension threshold
// ---------------------------------------------------------------------------

CheckResult check_dimension_threshold(std::uint64_t) {
    CheckResult result;
    result.name = "dimension-threshold";

    std::ostringstream detail;
    bool ok = true;

    // d <= 3: I(delta) is Cauchy at the last dyadic level.
    const struct {
        std::size_t d;
        std::vector<double> x;
        std::vector<double> deltas;
    } cases[] = {
        {1, {0.5}, {3.2e-5, 1.6e-5, 8e-6, 4e-6}},
        {2, {1.0, 1.0}, {1.6e-3, 8e-4, 4e-4, 2e-4}},
        {3, {1.0, 1.0, 1.0}, {8e-5, 4e-5, 2e-5, 1e-5}},
    };
    for (const auto& c : cases) {
        const auto profile = divergence_profile(c.d, c.x, c.deltas);
        const double last_step =
            std::abs(profile[profile.size() - 1].second - profile[profile.size() - 2].second);
        ok = ok && last_step < 1e-6;
        detail << "d=" << c.d << " last dyadic step " << fmt(last_step) << "; ";
    }

    // d = 4: successive dyadic differences approach a constant.
    const std::vector<double> x4 = {0.5, 0.5, 0.5, 0.5};
    const std::vector<double> deltas4 = {0.2, 0.1, 0.05, 0.025};
    const auto profile4 = divergence_profile(4, x4, deltas4);
    double worst_ratio_err = 0.0;
    for (std::size_t i = 2; i < profile4.size(); ++i) {
        const double d_prev = profile4[i - 1].second - profile4[i - 2].second;
        const double d_cur = profile4[i].second - profile4[i - 1].second;
        worst_ratio_err = std::max(worst_ratio_err, std::abs(d_cur / d_prev - 1.0));
    }
    ok = ok && worst_ratio_err < 0.2;
    detail << "d=4 dyadic-difference ratio off 1 by " << fmt(100.0 * worst_ratio_err)
           << "% (tol 20%)";

    result.passed = ok;
    result.detail = detail.str();
    return result;
}

using CheckFn = CheckResult (*)(std::uint64_t);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> checks = {
        {"jump-basis-orthonormality", &check_jump_basis},
        {"ito-isometry", &check_ito_isometry},
        {"charlier-orthogonality", &check_charlier_orthogonality},
        {"char-functional-moments", &check_char_functional_moments},
        {"wick-hermite-homomorphism", &check_wick_hermite},
        {"white-noise-derivative", &check_white_noise_derivative},
        {"poisson-solution-1d", &check_poisson_solution_1d},
        {"ball-variance", &check_ball_variance},
        {"pde-residual", &check_pde_residual},
        {"dimension-threshold", &check_dimension_threshold},
    };
    return checks;
}

}  // namespace

std::vector<std::string> acceptance_check_names() {
    std::vector<std::string> names;
    for (const auto& [name, fn] : registry()) {
        (void)fn;
        names.push_back(name);
    }
    return names;
}

namespace {

// Runtime budgets, seconds; 0 means unbounded.
double runtime_limit(const std::string& name) {
    if (name == "jump-basis-orthonormality") return 1.0;
    if (name == "ito-isometry") return 30.0;
    if (name == "charlier-orthogonality") return 120.0;
    if (name == "char-functional-moments") return 60.0;
    if (name == "poisson-solution-1d") return 120.0;
    if (name == "ball-variance") return 300.0;
    return 0.0;
}

}  // namespace

CheckResult run_acceptance_check(const std::string& name, std::uint64_t seed) {
    for (const auto& [check_name, fn] : registry()) {
        if (check_name == name) {
            const auto start = std::chrono::steady_clock::now();
            CheckResult result = fn(seed);
            result.seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const double limit = runtime_limit(name);
            if (limit > 0.0 && result.seconds > limit) {
                result.passed = false;
                result.detail += "; runtime " + fmt(result.seconds) + "s exceeds " +
                                 fmt(limit) + "s";
            }
            return result;
        }
    }
    throw std::invalid_argument("unknown acceptance check '" + name + "'");
}

std::vector<CheckResult> run_acceptance_suite(const std::string& suite, std::uint64_t seed) {
    std::vector<CheckResult> results;
    if (suite == "all") {
        for (const auto& [name, fn] : registry()) {
            (void)fn;
            results.push_back(run_acceptance_check(name, seed));
        }
    } else {
        results.push_back(run_acceptance_check(suite, seed));
    }
    return results;
}

}  // namespace levywn
