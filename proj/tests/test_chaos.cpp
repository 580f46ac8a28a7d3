#include <doctest.h>

#include <cmath>
#include <complex>

#include "levywn/chaos.hpp"
#include "levywn/random.hpp"

using namespace levywn;

namespace {

ChaosExpansion random_sparse(RandomSource& rng, std::size_t max_terms = 50,
                             unsigned max_order = 6) {
    ChaosExpansion F;
    const std::size_t terms = 1 + rng.next() % max_terms;
    for (std::size_t t = 0; t < terms; ++t) {
        std::vector<unsigned> e(1 + rng.next() % 5, 0u);
        unsigned budget = rng.next() % (max_order + 1);
        for (std::size_t i = 0; i < e.size() && budget > 0; ++i) {
            const unsigned v = rng.next() % (budget + 1);
            e[i] = v;
            budget -= v;
        }
        F.add(MultiIndex(std::move(e)), rng.uniform(-1.0, 1.0));
    }
    return F;
}

ComplexPoint random_point(RandomSource& rng, std::size_t dim = 6, double radius = 0.5) {
    ComplexPoint z;
    for (std::size_t i = 0; i < dim; ++i) {
        z.entries.emplace_back(rng.uniform(-radius, radius), rng.uniform(-radius, radius));
    }
    return z;
}

}  // namespace

TEST_SUITE("chaos") {

TEST_CASE("wick product of first-order factors") {
    // (1 + K_{e1}) wick (1 + K_{e1}) = 1 + 2 K_{e1} + K_{(2)}.
    ChaosExpansion F = ChaosExpansion::constant(1.0);
    F.add(MultiIndex::unit(1), 1.0);
    const ChaosExpansion P = wick(F, F);
    CHECK(P.coefficient(MultiIndex()) == 1.0);
    CHECK(P.coefficient(MultiIndex::unit(1)) == 2.0);
    CHECK(P.coefficient(MultiIndex({2})) == 1.0);
    CHECK(P.term_count() == 3);
}

TEST_CASE("wick unit element") {
    RandomSource rng(21);
    const ChaosExpansion F = random_sparse(rng);
    CHECK(wick(F, ChaosExpansion::constant(1.0)) == F);
}

TEST_CASE("wick grading adds orders") {
    RandomSource rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        ChaosExpansion F, G;
        // Homogeneous of orders 2 and 3.
        F.add(MultiIndex({1, 1}), rng.uniform(-1, 1));
        F.add(MultiIndex({0, 2}), rng.uniform(-1, 1));
        G.add(MultiIndex({1, 1, 1}), rng.uniform(-1, 1));
        G.add(MultiIndex({3}), rng.uniform(-1, 1));
        const ChaosExpansion P = wick(F, G);
        for (const auto& [gamma, c] : P.terms()) {
            (void)c;
            CHECK(gamma.order() == 5);
        }
    }
}

TEST_CASE("wick algebra laws") {
    RandomSource rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const ChaosExpansion F = random_sparse(rng, 20);
        const ChaosExpansion G = random_sparse(rng, 20);
        const ChaosExpansion H = random_sparse(rng, 20);

        const ChaosExpansion FG = wick(F, G);
        const ChaosExpansion GF = wick(G, F);
        for (const auto& [alpha, c] : FG.terms()) {
            CHECK(GF.coefficient(alpha) == doctest::Approx(c).epsilon(1e-12));
        }

        const ChaosExpansion left = wick(wick(F, G), H);
        const ChaosExpansion right = wick(F, wick(G, H));
        for (const auto& [alpha, c] : left.terms()) {
            CHECK(right.coefficient(alpha) == doctest::Approx(c).epsilon(1e-12));
        }

        const ChaosExpansion dist = wick(F, G + H);
        const ChaosExpansion dist2 = wick(F, G) + wick(F, H);
        for (const auto& [alpha, c] : dist.terms()) {
            CHECK(dist2.coefficient(alpha) == doctest::Approx(c).epsilon(1e-12));
        }
    }
}

TEST_CASE("expectation") {
    ChaosExpansion F = ChaosExpansion::constant(3.0);
    F.add(MultiIndex::unit(1), 2.0);
    CHECK(expectation(F) == 3.0);
    CHECK(expectation(ChaosExpansion::basis_vector(MultiIndex({1, 1}))) == 0.0);

    RandomSource rng(24);
    for (int trial = 0; trial < 20; ++trial) {
        const ChaosExpansion A = random_sparse(rng, 15);
        const ChaosExpansion B = random_sparse(rng, 15);
        CHECK(expectation(wick(A, B)) ==
              doctest::Approx(expectation(A) * expectation(B)).epsilon(1e-12));
    }
}

TEST_CASE("inner product and l2 norm") {
    const MultiIndex a({2});
    CHECK(inner(ChaosExpansion::basis_vector(a), ChaosExpansion::basis_vector(a)) ==
          doctest::Approx(2.0));
    CHECK(inner(ChaosExpansion::basis_vector(a), ChaosExpansion::basis_vector(MultiIndex({1, 1}))) ==
          0.0);
    CHECK(l2_norm(ChaosExpansion::basis_vector(MultiIndex::unit(1))) == doctest::Approx(1.0));
    CHECK(l2_norm(ChaosExpansion()) == 0.0);
    CHECK(l2_norm(ChaosExpansion::basis_vector(MultiIndex({2}), 2.0)) ==
          doctest::Approx(2.0 * std::sqrt(2.0)));

    RandomSource rng(25);
    for (int trial = 0; trial < 20; ++trial) {
        const ChaosExpansion F = random_sparse(rng, 25);
        const ChaosExpansion G = random_sparse(rng, 25);
        CHECK(inner(F, G) == doctest::Approx(inner(G, F)).epsilon(1e-12));
        CHECK(inner(F, F) == doctest::Approx(l2_norm(F) * l2_norm(F)).epsilon(1e-12));
        CHECK(inner(F, ChaosExpansion::constant(1.0)) ==
              doctest::Approx(expectation(F)).epsilon(1e-12));
        // Bilinearity in the first slot.
        const ChaosExpansion H = random_sparse(rng, 25);
        CHECK(inner(F + H, G) == doctest::Approx(inner(F, G) + inner(H, G)).epsilon(2e-12));
    }
}

TEST_CASE("kondratiev norms") {
    const ChaosExpansion F = ChaosExpansion::basis_vector(MultiIndex::unit(2));
    CHECK(kondratiev_norm(F, 1.0, 1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(kondratiev_norm(F, 1.5, 0), std::invalid_argument);
    // Distribution-space norm: (alpha!)^{1-rho} (2N)^{-k alpha} = 1 * (1/4).
    CHECK(kondratiev_norm(ChaosExpansion::basis_vector(MultiIndex({2})), -1.0, -1) ==
          doctest::Approx(0.5));

    RandomSource rng(26);
    for (int trial = 0; trial < 20; ++trial) {
        const ChaosExpansion G = random_sparse(rng, 20);
        CHECK(kondratiev_norm(G, 0.0, 0) == doctest::Approx(l2_norm(G)).epsilon(1e-13));
        // Monotone in k.
        CHECK(kondratiev_norm(G, 0.5, -1) <= kondratiev_norm(G, 0.5, 0) + 1e-15);
        CHECK(kondratiev_norm(G, 0.5, 0) <= kondratiev_norm(G, 0.5, 2) + 1e-15);
    }
}

TEST_CASE("hermite transform basics") {
    // F = (1 + K_{e1})^wick2 transforms to (1+z1)^2.
    ChaosExpansion F = ChaosExpansion::constant(1.0);
    F.add(MultiIndex::unit(1), 1.0);
    const ChaosExpansion P = wick(F, F);
    ComplexPoint z;
    z.entries = {{0.3, 0.4}};
    const std::complex<double> expected = std::pow(std::complex<double>(1.3, 0.4), 2);
    CHECK(std::abs(hermite_transform(P, z) - expected) < 1e-14);

    // Coordinates beyond the support of z count as zero.
    ComplexPoint z2;
    z2.entries = {{1.0, 0.0}, {1.0, 0.0}};
    CHECK(std::abs(hermite_transform(ChaosExpansion::basis_vector(MultiIndex::unit(3)), z2)) ==
          0.0);
}

TEST_CASE("hermite transform is a wick homomorphism") {
    RandomSource rng(27);
    for (int trial = 0; trial < 100; ++trial) {
        const ChaosExpansion F = random_sparse(rng, 20);
        const ChaosExpansion G = random_sparse(rng, 20);
        const ComplexPoint z = random_point(rng);
        const std::complex<double> lhs = hermite_transform(wick(F, G), z);
        const std::complex<double> rhs = hermite_transform(F, z) * hermite_transform(G, z);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1.0});
        CHECK(std::abs(lhs - rhs) / scale < 1e-12);
    }
}

TEST_CASE("neighborhood sums") {
    // Single coordinate: geometric series t/(1-t), checked against partial sums.
    const double c = 0.4, q = 1.0;
    ComplexPoint z;
    z.entries = {{c, 0.0}};
    const double t = c * c * 2.0;
    const auto sum = neighborhood_sum(z, q);
    REQUIRE(sum.has_value());
    CHECK(*sum == doctest::Approx(t / (1.0 - t)).epsilon(1e-13));
    double partial = 0.0;
    for (int a = 1; a <= 60; ++a) partial += std::pow(t, a);
    CHECK(*sum == doctest::Approx(partial).epsilon(1e-10));

    CHECK(in_neighborhood(ComplexPoint{}, 3.0, 0.1));  // z = 0 lies in every K_q(R)

    ComplexPoint one;
    one.entries = {{1.0, 0.0}};
    CHECK(!neighborhood_sum(one, 1.0).has_value());  // t = 2 >= 1 diverges
    CHECK(!in_neighborhood(one, 1.0, 1e9));
}

TEST_CASE("growth constant bounds the transform") {
    CHECK(growth_constant(ChaosExpansion::basis_vector(MultiIndex::unit(1)), 2.0) ==
          doctest::Approx(0.5));
    CHECK(growth_constant(ChaosExpansion::constant(1.0), 4.0) == doctest::Approx(1.0));

    RandomSource rng(28);
    const double q = 2.0;
    for (int trial = 0; trial < 50; ++trial) {
        const ChaosExpansion F = random_sparse(rng, 20);
        // Keep every |z_j|^2 (2j)^q below 1 so the neighborhood sum converges.
        ComplexPoint z;
        for (std::size_t j = 1; j <= 5; ++j) {
            const double r = 0.3 / (std::pow(2.0 * j, q / 2.0) * std::sqrt(2.0));
            z.entries.emplace_back(rng.uniform(-r, r), rng.uniform(-r, r));
        }
        const auto sum = neighborhood_sum(z, q);
        REQUIRE(sum.has_value());
        const double bound = growth_constant(F, q) * std::sqrt(*sum + 1.0);
        CHECK(std::abs(hermite_transform(F, z)) <= bound * (1.0 + 1e-12));
    }
}

}  // TEST_SUITE
