#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "levywn/hermite.hpp"
#include "levywn/io.hpp"
#include "levywn/prm.hpp"

using namespace levywn;

namespace {

LevyMeasureModel one_atom() { return LevyMeasureModel::from_atoms({{1.0, 1.0}}); }
LevyMeasureModel two_atoms() { return LevyMeasureModel::from_atoms({{-1.0, 1.0}, {1.0, 1.0}}); }

Box unit_box(std::size_t d) { return Box::from_lengths(std::vector<double>(d, 1.0)); }

PointFunction count_fn() {
    return [](std::span<const double>, double) { return 1.0; };
}

}  // namespace

TEST_SUITE("prm") {

TEST_CASE("moment accumulator merge equals single-stream accumulation") {
    RandomSource rng(99);
    std::vector<double> values(1000);
    for (double& v : values) v = rng.uniform(-2.0, 3.0);

    MomentAccumulator whole;
    for (double v : values) whole.add(v);

    MomentAccumulator left, right;
    for (std::size_t i = 0; i < 400; ++i) left.add(values[i]);
    for (std::size_t i = 400; i < values.size(); ++i) right.add(values[i]);
    left.merge(right);

    CHECK(left.count() == whole.count());
    CHECK(left.mean() == doctest::Approx(whole.mean()).epsilon(1e-13));
    CHECK(left.variance() == doctest::Approx(whole.variance()).epsilon(1e-12));
    CHECK(left.fourth_moment() == doctest::Approx(whole.fourth_moment()).epsilon(1e-12));

    // Two-pass oracle for the central moments.
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double m2 = 0.0, m4 = 0.0;
    for (double v : values) {
        m2 += (v - mean) * (v - mean);
        m4 += std::pow(v - mean, 4);
    }
    CHECK(whole.mean() == doctest::Approx(mean).epsilon(1e-13));
    CHECK(whole.variance() ==
          doctest::Approx(m2 / (values.size() - 1.0)).epsilon(1e-12));
    CHECK(whole.fourth_moment() ==
          doctest::Approx(m4 / values.size()).epsilon(1e-12));
}

TEST_CASE("poisson sampler has the right mean and variance") {
    RandomSource rng(100);
    MomentAccumulator acc;
    for (int i = 0; i < 100000; ++i) acc.add(static_cast<double>(rng.poisson(3.5)));
    CHECK(std::abs(acc.mean() - 3.5) < 3.0 * acc.mean_se());
    CHECK(std::abs(acc.variance() - 3.5) < 3.0 * acc.variance_se());
    RandomSource rng2(101);
    CHECK(rng2.poisson(0.0) == 0);
}

TEST_CASE("sample_prm count follows Poisson(mass)") {
    const PrmSampler sampler(one_atom(), unit_box(1), 0.0);
    CHECK(sampler.mass() == doctest::Approx(1.0));
    const RandomSource base(42);
    MomentAccumulator acc;
    for (std::size_t i = 0; i < 100000; ++i) {
        RandomSource stream = base.split(i);
        acc.add(static_cast<double>(sampler.sample(stream).points.size()));
    }
    CHECK(std::abs(acc.mean() - 1.0) < 3.0 * std::pow(10.0, -2.5));
}

TEST_CASE("empty box yields no points") {
    Box box = Box::from_lengths({0.0, 1.0});
    RandomSource rng(1);
    const PointConfiguration config = sample_prm(two_atoms(), box, 0.0, rng);
    CHECK(config.points.empty());
    CHECK(config.mass == 0.0);
}

TEST_CASE("fixed seed reproduces the configuration") {
    const Box box = unit_box(2);
    RandomSource a(77), b(77);
    const PointConfiguration ca = sample_prm(two_atoms(), box, 0.0, a);
    const PointConfiguration cb = sample_prm(two_atoms(), box, 0.0, b);
    REQUIRE(ca.points.size() == cb.points.size());
    for (std::size_t i = 0; i < ca.points.size(); ++i) {
        CHECK(ca.points[i].z == cb.points[i].z);
        for (std::size_t j = 0; j < 2; ++j) CHECK(ca.points[i].x[j] == cb.points[i].x[j]);
    }
}

TEST_CASE("mc_accumulate is reproducible for any thread count") {
    const PrmSampler sampler(two_atoms(), unit_box(1), 0.0);
    const RandomSource base(5);
    const auto estimator = [](const PointConfiguration& c) {
        return static_cast<double>(c.points.size());
    };
    const MomentAccumulator serial = mc_accumulate(sampler, base, 20000, estimator);
    setenv("LEVYWN_THREADS", "3", 1);
    const MomentAccumulator parallel = mc_accumulate(sampler, base, 20000, estimator);
    unsetenv("LEVYWN_THREADS");
    CHECK(serial.mean() == parallel.mean());
    CHECK(serial.variance() == parallel.variance());
    CHECK(serial.fourth_moment() == parallel.fourth_moment());
}

TEST_CASE("pair_raw basics and Campbell mean") {
    RandomSource rng(7);
    const PointConfiguration config = sample_prm(two_atoms(), unit_box(1), 0.0, rng);
    CHECK(pair_raw(config, count_fn()) == doctest::Approx(config.points.size()));
    CHECK(pair_raw(config, [](std::span<const double>, double) { return 0.0; }) == 0.0);

    const PointFunction f = [](std::span<const double> x, double z) {
        return (1.0 + x[0]) * z * z;
    };
    const double theory = integrate_pi(two_atoms(), unit_box(1), 0.0, f);
    CHECK(theory == doctest::Approx(3.0).epsilon(1e-12));  // int (1+y) dy * int z^2 nu = 1.5 * 2
    const PrmSampler sampler(two_atoms(), unit_box(1), 0.0);
    const MomentAccumulator acc = mc_accumulate(sampler, RandomSource(8), 100000,
                                                [&](const PointConfiguration& c) {
                                                    return pair_raw(c, f);
                                                });
    CHECK(std::abs(acc.mean() - theory) < 3.0 * acc.mean_se());
}

TEST_CASE("compensated pairing is centered with isometry variance") {
    const LevyMeasureModel model = two_atoms();
    const Box box = unit_box(1);
    const PointFunction f = [](std::span<const double> x, double z) {
        return std::sin(2.0 * M_PI * x[0]) * z + x[0] * z * z;
    };
    const double compensator = integrate_pi(model, box, 0.0, f);
    const double l2sq = integrate_pi(model, box, 0.0, [&](std::span<const double> x, double z) {
        const double v = f(x, z);
        return v * v;
    });
    const PrmSampler sampler(model, box, 0.0);
    const MomentAccumulator acc = mc_accumulate(sampler, RandomSource(9), 100000,
                                                [&](const PointConfiguration& c) {
                                                    return pair_compensated(c, f, compensator);
                                                });
    CHECK(std::abs(acc.mean()) < 3.0 * acc.mean_se());
    CHECK(std::abs(acc.variance() - l2sq) < 3.0 * acc.variance_se());
}

TEST_CASE("compensated pairing of a delta basis function has unit variance") {
    const LevyMeasureModel model = two_atoms();
    const OrthonormalJumpBasis basis = build_jump_basis(model, 2);
    const Box box = unit_box(1);
    // delta_1 restricted to the box is not the full L^2(pi) normalization;
    // compare against its actual norm over the box.
    const PointFunction f = [&](std::span<const double> x, double z) {
        return delta_k(basis, 1, x, z);
    };
    const double l2sq = integrate_pi(model, box, 0.0, [&](std::span<const double> x, double z) {
        const double v = f(x, z);
        return v * v;
    });
    const double compensator = integrate_pi(model, box, 0.0, f);
    const PrmSampler sampler(model, box, 0.0);
    const MomentAccumulator acc = mc_accumulate(sampler, RandomSource(10), 100000,
                                                [&](const PointConfiguration& c) {
                                                    return pair_compensated(c, f, compensator);
                                                });
    CHECK(std::abs(acc.variance() - l2sq) < 3.0 * acc.variance_se());
}

TEST_CASE("eta_sample") {
    const LevyMeasureModel model = one_atom();
    SUBCASE("zero coordinate gives zero") {
        RandomSource rng(11);
        const PointConfiguration config = sample_prm(model, unit_box(2), 0.0, rng);
        const double x[2] = {0.0, 0.7};
        CHECK(eta_sample(config, model, std::span<const double>(x, 2)) == 0.0);
    }
    SUBCASE("centered Poisson for the unit atom") {
        RandomSource rng(12);
        const PointConfiguration config = sample_prm(model, unit_box(1), 0.0, rng);
        const double x[1] = {1.0};
        CHECK(eta_sample(config, model, std::span<const double>(x, 1)) ==
              doctest::Approx(static_cast<double>(config.points.size()) - 1.0));
    }
    SUBCASE("outside the box is rejected") {
        RandomSource rng(13);
        const PointConfiguration config = sample_prm(model, unit_box(1), 0.0, rng);
        const double x[1] = {1.5};
        CHECK_THROWS_AS(eta_sample(config, model, std::span<const double>(x, 1)),
                        std::invalid_argument);
    }
    SUBCASE("mean and variance in d = 2") {
        const LevyMeasureModel sym = two_atoms();
        const double x[2] = {0.8, 0.5};
        const PrmSampler sampler(sym, unit_box(2), 0.0);
        const MomentAccumulator acc =
            mc_accumulate(sampler, RandomSource(14), 100000, [&](const PointConfiguration& c) {
                return eta_sample(c, sym, std::span<const double>(x, 2));
            });
        CHECK(std::abs(acc.mean()) < 3.0 * acc.mean_se());
        const double target = sym.m2() * 0.8 * 0.5;
        CHECK(std::abs(acc.variance() - target) < 3.0 * acc.variance_se());
    }
}

TEST_CASE("stationary increments in d = 1") {
    const LevyMeasureModel model = two_atoms();
    const Box box = Box::from_lengths({2.0});
    const PrmSampler sampler(model, box, 0.0);
    const double s = 0.6, t = 0.9;
    MomentAccumulator inc, ref;
    const RandomSource base(15);
    for (std::size_t i = 0; i < 100000; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration config = sampler.sample(stream);
        const double xt[1] = {t}, xts[1] = {t + s}, xs[1] = {s};
        inc.add(eta_sample(config, model, std::span<const double>(xts, 1)) -
                eta_sample(config, model, std::span<const double>(xt, 1)));
        ref.add(eta_sample(config, model, std::span<const double>(xs, 1)));
    }
    CHECK(std::abs(inc.mean() - ref.mean()) <
          3.0 * std::sqrt(inc.mean_se() * inc.mean_se() + ref.mean_se() * ref.mean_se()));
    CHECK(std::abs(inc.variance() - ref.variance()) <
          3.0 * std::sqrt(inc.variance_se() * inc.variance_se() +
                          ref.variance_se() * ref.variance_se()));
}

TEST_CASE("eta_chaos Parseval structure") {
    const LevyMeasureModel model = two_atoms();
    SUBCASE("zero coordinate gives the zero expansion") {
        const double x[2] = {0.0, 0.5};
        CHECK(eta_chaos(model, std::span<const double>(x, 2), 30).empty());
    }
    SUBCASE("partial sums are monotone with the Parseval limit") {
        const double x[1] = {1.0};
        const double limit = model.m2() * 1.0;
        double prev = 0.0;
        for (std::uint64_t K : {25, 50, 100, 200}) {
            const ChaosExpansion F = eta_chaos(model, std::span<const double>(x, 1), K);
            const double v = l2_norm(F) * l2_norm(F);
            CHECK(v >= prev);
            CHECK(v <= limit * (1.0 + 1e-12));
            prev = v;
        }
        // Tail at K = 200, frozen from the quadrature oracle (~3.3%).
        CHECK(prev > 0.95 * limit);
    }
}

TEST_CASE("eta_chaos variance matches eta_sample within 3 SE plus tail") {
    const LevyMeasureModel model = two_atoms();
    const double x[1] = {0.7};
    const ChaosExpansion F = eta_chaos(model, std::span<const double>(x, 1), 200);
    const double partial = l2_norm(F) * l2_norm(F);
    const double limit = model.m2() * 0.7;
    const double tail = limit - partial;
    REQUIRE(tail >= 0.0);
    const PrmSampler sampler(model, unit_box(1), 0.0);
    const MomentAccumulator acc =
        mc_accumulate(sampler, RandomSource(16), 100000, [&](const PointConfiguration& c) {
            return eta_sample(c, model, std::span<const double>(x, 1));
        });
    CHECK(std::abs(acc.variance() - partial) <= 3.0 * acc.variance_se() + tail);
}

TEST_CASE("white noise expansion and the derivative relation") {
    const LevyMeasureModel model = two_atoms();
    const double m = model.m();
    SUBCASE("coefficients are m zeta_k(x)") {
        const double x[2] = {0.3, 0.6};
        const ChaosExpansion F = white_noise_chaos(model, std::span<const double>(x, 2), 12);
        CHECK(expectation(F) == 0.0);
        for (std::uint64_t k = 1; k <= 12; ++k) {
            CHECK(F.coefficient(MultiIndex::unit(cantor_pair(k, 1))) ==
                  doctest::Approx(m * tensor_hermite(k, std::span<const double>(x, 2)))
                      .epsilon(1e-13));
        }
    }
    SUBCASE("mixed partial of eta coefficients recovers the noise coefficients") {
        // Fourth-order central differences in each coordinate.
        const double h = 0.01;
        const auto d1 = [&](const std::function<double(double)>& g, double t) {
            return (-g(t + 2 * h) + 8 * g(t + h) - 8 * g(t - h) + g(t - 2 * h)) / (12 * h);
        };
        const double x0 = 0.4, y0 = 0.55;
        for (std::uint64_t k = 1; k <= 8; ++k) {
            const auto coeff2 = [&](double a, double b) {
                const double x[2] = {a, b};
                return eta_chaos(model, std::span<const double>(x, 2), k)
                    .coefficient(MultiIndex::unit(cantor_pair(k, 1)));
            };
            const double mixed = d1(
                [&](double a) {
                    return d1([&](double b) { return coeff2(a, b); }, y0);
                },
                x0);
            const double xp[2] = {x0, y0};
            const double target = m * tensor_hermite(k, std::span<const double>(xp, 2));
            CHECK(mixed == doctest::Approx(target).epsilon(1e-6));
        }
    }
}

TEST_CASE("prm noise expansion") {
    const LevyMeasureModel model = two_atoms();
    const OrthonormalJumpBasis basis = build_jump_basis(model, 2);
    const double x[1] = {0.45};
    const std::span<const double> xs(x, 1);

    SUBCASE("coefficients factor as zeta_k(x) p_m(z)") {
        const double z = -1.0;
        const ChaosExpansion F = prm_noise_chaos(model, basis, xs, z, 5, 2);
        for (std::uint64_t k = 1; k <= 5; ++k) {
            for (std::uint64_t mm = 1; mm <= 2; ++mm) {
                CHECK(F.coefficient(MultiIndex::unit(cantor_pair(k, mm))) ==
                      doctest::Approx(tensor_hermite(k, xs) * basis.eval(mm, z)).epsilon(1e-13));
            }
        }
    }
    SUBCASE("z = 0 gives the zero expansion") {
        CHECK(prm_noise_chaos(model, basis, xs, 0.0, 5, 2).empty());
    }
    SUBCASE("Km beyond the cap is rejected") {
        CHECK_THROWS_AS(prm_noise_chaos(model, basis, xs, 1.0, 5, 3), std::out_of_range);
    }
    SUBCASE("z-integral against z nu(dz) recovers the white noise expansion") {
        // Coefficient-wise: int z zeta_k(x) p_m(z) nu(dz) = zeta_k(x) m delta_{m1}.
        const std::uint64_t Ks = 6, Km = 2;
        ChaosExpansion integrated;
        for (std::uint64_t k = 1; k <= Ks; ++k) {
            for (std::uint64_t mm = 1; mm <= Km; ++mm) {
                const double zmom = model.integrate(
                    [&](double z) { return z * basis.eval(mm, z); }, 0.0);
                integrated.add(MultiIndex::unit(cantor_pair(k, mm)),
                               tensor_hermite(k, xs) * zmom);
            }
        }
        const ChaosExpansion noise = white_noise_chaos(model, xs, Ks);
        for (const auto& [alpha, c] : integrated.terms()) {
            CHECK(c == doctest::Approx(noise.coefficient(alpha)).epsilon(1e-10));
        }
        for (const auto& [alpha, c] : noise.terms()) {
            CHECK(integrated.coefficient(alpha) == doctest::Approx(c).epsilon(1e-10));
        }
    }
}

TEST_CASE("charlier kernels: Poisson scalar case") {
    const LevyMeasureModel model = one_atom();
    const Box box = unit_box(1);
    const PointFunction chi = count_fn();
    const PrmSampler sampler(model, box, 0.0);
    // C2 = (N - 1)^2 - N for the unit-intensity count.
    MomentAccumulator acc;
    const RandomSource base(20);
    for (std::size_t i = 0; i < 100000; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration config = sampler.sample(stream);
        const double n = static_cast<double>(config.points.size());
        const double c2 = charlier_eval(config, model, chi, chi, 2);
        CHECK(c2 == doctest::Approx((n - 1.0) * (n - 1.0) - n).epsilon(1e-12));
        acc.add(c2);
    }
    CHECK(std::abs(acc.mean()) < 3.0 * acc.mean_se());
    // E[C2^2] = 2 lambda^2 = 2: second raw moment of the sampled C2 values.
    const double second = acc.variance() + acc.mean() * acc.mean();
    const double second_se = acc.variance_se();
    CHECK(std::abs(second - 2.0) < 3.0 * second_se);

    RandomSource rng(21);
    const PointConfiguration config = sampler.sample(rng);
    CHECK(charlier_eval(config, model, chi, chi, 0) == 1.0);
    CHECK_THROWS_AS(charlier_eval(config, model, chi, chi, 3), std::invalid_argument);
}

TEST_CASE("charlier orthogonality across orders") {
    const LevyMeasureModel model = two_atoms();
    const Box box = unit_box(1);
    const PointFunction f = [](std::span<const double> x, double z) { return (1.0 + x[0]) * z; };
    const PointFunction g = [](std::span<const double> x, double z) {
        return std::cos(M_PI * x[0]) * z * z;
    };
    const PointFunction h = [](std::span<const double> x, double z) { return x[0] * z; };

    const double comp_f = integrate_pi(model, box, 0.0, f);
    const double comp_g = integrate_pi(model, box, 0.0, g);
    const double comp_h = integrate_pi(model, box, 0.0, h);
    const auto product = [](const PointFunction& a, const PointFunction& b) {
        return [&a, &b](std::span<const double> x, double z) { return a(x, z) * b(x, z); };
    };

    const PrmSampler sampler(model, box, 0.0);
    MomentAccumulator c1_c2, c2_c2;
    const RandomSource base(22);
    for (std::size_t i = 0; i < 100000; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration config = sampler.sample(stream);
        const double c1f = pair_compensated(config, f, comp_f);
        const double c1g = pair_compensated(config, g, comp_g);
        const double c1h = pair_compensated(config, h, comp_h);
        const double c2fg = c1f * c1g - pair_raw(config, product(f, g));
        const double c2ff = c1f * c1f - pair_raw(config, product(f, f));
        const double c2hh = c1h * c1h - pair_raw(config, product(h, h));
        (void)c2fg;
        c1_c2.add(c1f * c2fg);
        c2_c2.add(c2ff * c2hh);
    }
    CHECK(std::abs(c1_c2.mean()) < 3.0 * c1_c2.mean_se());
    const double fh = integrate_pi(model, box, 0.0, product(f, h));
    CHECK(std::abs(c2_c2.mean() - 2.0 * fh * fh) < 3.0 * c2_c2.mean_se());
}

TEST_CASE("k_alpha_eval identities") {
    const LevyMeasureModel model = two_atoms();
    const OrthonormalJumpBasis basis = build_jump_basis(model, 2);
    RandomSource rng(23);
    const PointConfiguration config = sample_prm(model, unit_box(1), 0.0, rng);

    CHECK(k_alpha_eval(config, model, basis, MultiIndex()) == 1.0);
    CHECK_THROWS_AS(k_alpha_eval(config, model, basis, MultiIndex({2, 1})),
                    std::invalid_argument);

    // K_{epsilon^l} is the compensated pairing of delta_l.
    for (std::uint64_t l : {1, 2, 3}) {
        const PointFunction dl = [&](std::span<const double> x, double z) {
            return delta_k(basis, l, x, z);
        };
        CHECK(k_alpha_eval(config, model, basis, MultiIndex::unit(l)) ==
              doctest::Approx(pair_compensated(config, model, dl)).epsilon(1e-12));
    }

    // Polarized order-2 kernel against the explicit formula.
    const MultiIndex alpha = MultiIndex::unit(1) + MultiIndex::unit(3);
    const PointFunction d1 = [&](std::span<const double> x, double z) {
        return delta_k(basis, 1, x, z);
    };
    const PointFunction d3 = [&](std::span<const double> x, double z) {
        return delta_k(basis, 3, x, z);
    };
    const double expected = pair_compensated(config, model, d1) *
                                pair_compensated(config, model, d3) -
                            pair_raw(config, [&](std::span<const double> x, double z) {
                                return d1(x, z) * d3(x, z);
                            });
    CHECK(k_alpha_eval(config, model, basis, alpha) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("k_alpha empirical gram matches diag(alpha!) at small scale") {
    const LevyMeasureModel model = two_atoms();
    const OrthonormalJumpBasis basis = build_jump_basis(model, 2);
    // The window must carry the Hermite functions' mass on both sides of 0
    // for the delta system to be orthonormal over it.
    const Box box = Box::symmetric(1, 5.0);

    // All alpha with |alpha| <= 2 over indices <= 3.
    std::vector<MultiIndex> alphas = {MultiIndex()};
    for (std::size_t l = 1; l <= 3; ++l) alphas.push_back(MultiIndex::unit(l));
    for (std::size_t a = 1; a <= 3; ++a) {
        for (std::size_t b = a; b <= 3; ++b) {
            alphas.push_back(MultiIndex::unit(a) + MultiIndex::unit(b));
        }
    }

    // Precompute compensators of the three delta functions.
    std::vector<double> comp(4, 0.0);
    for (std::size_t l = 1; l <= 3; ++l) {
        comp[l] = integrate_pi(model, box, 0.0, [&](std::span<const double> x, double z) {
            return delta_k(basis, l, x, z);
        });
    }

    const PrmSampler sampler(model, box, 0.0);
    const std::size_t n = 40000;
    std::vector<MomentAccumulator> gram(alphas.size() * alphas.size());
    const RandomSource base(24);
    for (std::size_t i = 0; i < n; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration config = sampler.sample(stream);
        // Fast evaluation sharing pairings, cross-checked against k_alpha_eval.
        std::vector<double> c1(4, 0.0);
        for (std::size_t l = 1; l <= 3; ++l) {
            c1[l] = pair_raw(config, [&](std::span<const double> x, double z) {
                        return delta_k(basis, l, x, z);
                    }) -
                    comp[l];
        }
        std::vector<double> K(alphas.size());
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            const MultiIndex& alpha = alphas[a];
            if (alpha.order() == 0) {
                K[a] = 1.0;
            } else if (alpha.order() == 1) {
                K[a] = c1[alpha.index()];
            } else {
                std::size_t j = 0, l = 0;
                for (std::size_t p = 1; p <= alpha.index(); ++p) {
                    for (unsigned rep = 0; rep < alpha.at(p); ++rep) {
                        if (j == 0) {
                            j = p;
                        } else {
                            l = p;
                        }
                    }
                }
                const double mixed = pair_raw(config, [&](std::span<const double> x, double z) {
                    return delta_k(basis, j, x, z) * delta_k(basis, l, x, z);
                });
                K[a] = c1[j] * c1[l] - mixed;
            }
            if (i == 0) {
                CHECK(K[a] ==
                      doctest::Approx(k_alpha_eval(config, model, basis, alpha)).epsilon(1e-12));
            }
        }
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            for (std::size_t b = a; b < alphas.size(); ++b) {
                gram[a * alphas.size() + b].add(K[a] * K[b]);
            }
        }
    }
    int outliers = 0;
    for (std::size_t a = 0; a < alphas.size(); ++a) {
        for (std::size_t b = a; b < alphas.size(); ++b) {
            const MomentAccumulator& acc = gram[a * alphas.size() + b];
            const double target = (a == b) ? alphas[a].factorial() : 0.0;
            if (std::abs(acc.mean() - target) > 3.5 * acc.mean_se()) ++outliers;
        }
    }
    CHECK(outliers == 0);
}

TEST_CASE("characteristic functional") {
    const LevyMeasureModel model = one_atom();
    const Box box = unit_box(1);
    SUBCASE("zero function gives 1 on both sides") {
        const PointFunction zero = [](std::span<const double>, double) { return 0.0; };
        const CharFunctionalResult r =
            char_functional_check(model, box, 0.0, zero, 100, RandomSource(30));
        CHECK(std::abs(r.empirical - std::complex<double>(1.0, 0.0)) < 1e-12);
        CHECK(std::abs(r.theory - std::complex<double>(1.0, 0.0)) < 1e-12);
    }
    SUBCASE("f = pi chi gives exp(-2)") {
        const PointFunction f = [](std::span<const double>, double) { return M_PI; };
        const CharFunctionalResult r =
            char_functional_check(model, box, 0.0, f, 100000, RandomSource(31));
        CHECK(std::abs(r.theory - std::exp(-2.0)) < 1e-12);
        CHECK(std::abs(r.empirical - r.theory) < 3.0 * r.std_error);
    }
}

TEST_CASE("moment formula matches Poisson raw moments and Monte Carlo") {
    const LevyMeasureModel model = one_atom();
    const Box box = unit_box(1);
    const PointFunction chi = count_fn();
    CHECK(moment_formula(model, box, chi, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(moment_formula(model, box, chi, 2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(moment_formula(model, box, chi, 3) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(moment_formula(model, box, chi, 4) == doctest::Approx(15.0).epsilon(1e-12));

    const PrmSampler sampler(model, box, 0.0);
    for (int p = 1; p <= 4; ++p) {
        const MomentAccumulator acc =
            mc_accumulate(sampler, RandomSource(32 + p), 100000, [&](const PointConfiguration& c) {
                return std::pow(pair_raw(c, chi), p);
            });
        CHECK(std::abs(acc.mean() - moment_formula(model, box, chi, p)) < 3.0 * acc.mean_se());
    }
    CHECK_THROWS_AS(moment_formula(model, box, chi, 5), std::invalid_argument);
    CHECK_THROWS_AS(moment_formula(model, box, chi, 0), std::invalid_argument);
}

TEST_CASE("truncation bookkeeping for density measures") {
    const LevyMeasureModel model = LevyMeasureModel::from_density("inv_square_exp", -4.0, 4.0);
    const double eps = 0.5;
    const PrmSampler sampler(model, unit_box(1), eps);
    CHECK(sampler.truncation_variance() ==
          doctest::Approx(model.truncated_variance(eps)).epsilon(1e-10));
    // Sampled jumps never fall below eps, and the compensated z-pairing has
    // the variance of the restricted measure.
    const PointFunction fz = [](std::span<const double>, double z) { return z; };
    const double comp = integrate_pi(model, unit_box(1), eps, fz);
    const double restricted_var =
        model.integrate([](double z) { return z * z; }, eps);
    MomentAccumulator acc;
    const RandomSource base(40);
    for (std::size_t i = 0; i < 40000; ++i) {
        RandomSource stream = base.split(i);
        const PointConfiguration config = sampler.sample(stream);
        for (const auto& p : config.points) REQUIRE(std::abs(p.z) >= eps);
        acc.add(pair_compensated(config, fz, comp));
    }
    CHECK(std::abs(acc.variance() - restricted_var) < 3.0 * acc.variance_se());
    CHECK(model.truncated_variance(eps) + restricted_var ==
          doctest::Approx(model.m2()).epsilon(1e-8));
}

}  // TEST_SUITE
