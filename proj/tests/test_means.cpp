#include <catch2/catch_amalgamated.hpp>

#include "opmeans/means.hpp"
#include "opmeans/norms.hpp"
#include "opmeans/random_matrices.hpp"

#include "oracles.hpp"

using namespace opmeans;
using Catch::Matchers::WithinAbs;

namespace {

double rel_diff(const HermitianMatrix& a, const HermitianMatrix& b) {
    return (a - b).frobenius_norm() /
           std::max(1.0, std::max(a.frobenius_norm(), b.frobenius_norm()));
}

}

TEST_CASE("weight validation") {
    REQUIRE_THROWS_AS(Weight(-0.1), std::invalid_argument);
    REQUIRE_THROWS_AS(Weight(1.1), std::invalid_argument);
    REQUIRE_NOTHROW(Weight(0.0));
    REQUIRE_NOTHROW(Weight(1.0));
}

TEST_CASE("means of commuting matrices act entrywise on eigenvalues") {
    const HermitianMatrix a = HermitianMatrix::diagonal({1.0, 4.0});
    const HermitianMatrix b = HermitianMatrix::diagonal({4.0, 16.0});
    const HermitianMatrix g = geometric_mean(a, b, 0.5);
    REQUIRE_THAT(g(0, 0).real(), WithinAbs(2.0, 1e-12));
    REQUIRE_THAT(g(1, 1).real(), WithinAbs(8.0, 1e-12));
    REQUIRE(std::abs(g(0, 1)) < 1e-12);

    const HermitianMatrix g2 =
        geometric_mean(HermitianMatrix::identity(2), b, 0.5);
    REQUIRE_THAT(g2(0, 0).real(), WithinAbs(2.0, 1e-12));
    REQUIRE_THAT(g2(1, 1).real(), WithinAbs(4.0, 1e-12));
}

TEST_CASE("scalar harmonic mean agrees with the closed form") {
    const HermitianMatrix a = HermitianMatrix::diagonal({2.0});
    const HermitianMatrix b = HermitianMatrix::diagonal({6.0});
    const HermitianMatrix h = harmonic_mean(a, b, 0.5);
    REQUIRE_THAT(h(0, 0).real(), WithinAbs(3.0, 1e-13));
    const HermitianMatrix g = geometric_mean(
        HermitianMatrix::diagonal({1.0}), HermitianMatrix::diagonal({3.0}), 0.5);
    REQUIRE_THAT(g(0, 0).real(), WithinAbs(std::sqrt(3.0), 1e-13));
}

TEST_CASE("weight endpoints return the operands") {
    Rng seeds(777);
    const HermitianMatrix a = random_hpd(3, 0.5, 3.0, seeds.next_u64());
    const HermitianMatrix b = random_hpd(3, 1.0, 8.0, seeds.next_u64());
    REQUIRE(rel_diff(arithmetic_mean(a, b, 0.0), a) < 1e-14);
    REQUIRE(rel_diff(arithmetic_mean(a, b, 1.0), b) < 1e-14);
    REQUIRE(rel_diff(geometric_mean(a, b, 0.0), a) < 1e-12);
    REQUIRE(rel_diff(geometric_mean(a, b, 1.0), b) < 1e-12);
    REQUIRE(rel_diff(harmonic_mean(a, b, 0.0), a) < 1e-12);
    REQUIRE(rel_diff(harmonic_mean(a, b, 1.0), b) < 1e-12);
}

TEST_CASE("arithmetic-geometric-harmonic ordering holds") {
    Rng seeds(778);
    for (std::size_t dim : {2u, 3u, 5u}) {
        for (int rep = 0; rep < 10; ++rep) {
            const HermitianMatrix a =
                random_hpd(dim, 0.3, 4.0, seeds.next_u64());
            const HermitianMatrix b =
                random_hpd(dim, 0.8, 9.0, seeds.next_u64());
            const double alpha = 0.1 + 0.8 * (rep / 10.0);
            const HermitianMatrix ari = arithmetic_mean(a, b, alpha);
            const HermitianMatrix geo = geometric_mean(a, b, alpha);
            const HermitianMatrix har = harmonic_mean(a, b, alpha);
            REQUIRE(loewner_leq(geo, ari).holds);
            REQUIRE(loewner_leq(har, geo).holds);
        }
    }
}

TEST_CASE("geometric mean inverts cleanly: (A # B)^-1 = A^-1 # B^-1") {
    Rng seeds(779);
    const HermitianMatrix a = random_hpd(4, 0.5, 5.0, seeds.next_u64());
    const HermitianMatrix b = random_hpd(4, 0.2, 3.0, seeds.next_u64());
    for (double beta : {0.25, 0.5, 0.9}) {
        const HermitianMatrix lhs = matrix_inverse(geometric_mean(a, b, beta));
        const HermitianMatrix rhs =
            geometric_mean(matrix_inverse(a), matrix_inverse(b), beta);
        REQUIRE(rel_diff(lhs, rhs) < 1e-10);
    }
}

TEST_CASE("geometric mean is congruence invariant") {
    Rng seeds(780);
    const HermitianMatrix a = random_hpd(3, 0.5, 4.0, seeds.next_u64());
    const HermitianMatrix b = random_hpd(3, 0.5, 4.0, seeds.next_u64());
    // X = U D with positive D: invertible, far from unitary
    const Matrix u = random_unitary(3, seeds.next_u64());
    Matrix x = u;
    const double d[3] = {0.5, 1.5, 3.0};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) x(i, j) *= d[j];
    const HermitianMatrix lhs = congruence(geometric_mean(a, b, 0.3), x);
    const HermitianMatrix rhs =
        geometric_mean(congruence(a, x), congruence(b, x), 0.3);
    REQUIRE(rel_diff(lhs, rhs) < 1e-10);
}

TEST_CASE("means scale linearly") {
    Rng seeds(781);
    const HermitianMatrix a = random_hpd(3, 0.5, 4.0, seeds.next_u64());
    const HermitianMatrix b = random_hpd(3, 0.5, 4.0, seeds.next_u64());
    for (double c : {3.0, 10.0}) {
        REQUIRE(rel_diff(geometric_mean(c * a, c * b, 0.4),
                         c * geometric_mean(a, b, 0.4)) < 1e-11);
        REQUIRE(rel_diff(harmonic_mean(c * a, c * b, 0.4),
                         c * harmonic_mean(a, b, 0.4)) < 1e-11);
    }
}

TEST_CASE("kubo-ando route reproduces the named means") {
    Rng seeds(782);
    const HermitianMatrix a = random_hpd(3, 0.5, 4.0, seeds.next_u64());
    const HermitianMatrix b = random_hpd(3, 0.5, 4.0, seeds.next_u64());

    const HermitianMatrix vi =
        kubo_ando_mean(a, b, parse_function("representing:arith:0.5"));
    REQUIRE(rel_diff(vi, arithmetic_mean(a, b, 0.5)) < 1e-11);

    const HermitianMatrix vg = kubo_ando_mean(a, b, parse_function("power:0.5"));
    REQUIRE(rel_diff(vg, geometric_mean(a, b, 0.5)) < 1e-12);

    const HermitianMatrix vh =
        kubo_ando_mean(a, b, parse_function("representing:harm:0.3"));
    REQUIRE(rel_diff(vh, harmonic_mean(a, b, 0.3)) < 1e-11);
}

TEST_CASE("representing function contract is enforced") {
    const HermitianMatrix a = HermitianMatrix::identity(1);
    const HermitianMatrix b = HermitianMatrix::diagonal({4.0});
    REQUIRE_THROWS_AS(kubo_ando_mean(a, b, make_exp()),
                      RepresentingFunctionError);
    // f(1) = 1 but negative inside the probed spectrum
    FunctionClaims none;
    const ScalarFunction dip("dip", [](double x) { return 2.0 - x; }, nullptr,
                             none, -1e9, "2 - x");
    REQUIRE_THROWS_AS(kubo_ando_mean(a, b, dip), RepresentingFunctionError);
}

TEST_CASE("positivity of operands is enforced") {
    const HermitianMatrix bad = HermitianMatrix::diagonal({1.0, -0.5});
    const HermitianMatrix good = HermitianMatrix::identity(2);
    REQUIRE_THROWS_AS(geometric_mean(bad, good, 0.5), PositivityError);
    REQUIRE_THROWS_AS(geometric_mean(good, bad, 0.5), PositivityError);
    REQUIRE_THROWS_AS(harmonic_mean(good, bad, 0.5), PositivityError);
    REQUIRE_THROWS_AS(sandwich_interval(good, bad), PositivityError);
}

TEST_CASE("mismatched dimensions are rejected") {
    const HermitianMatrix a = HermitianMatrix::identity(2);
    const HermitianMatrix b = HermitianMatrix::identity(3);
    REQUIRE_THROWS_AS(arithmetic_mean(a, b, 0.5), DimensionMismatchError);
    REQUIRE_THROWS_AS(harmonic_mean(a, b, 0.5), DimensionMismatchError);
}

TEST_CASE("sandwich interval is exact on a commuting pair") {
    const auto iv =
        sandwich_interval(HermitianMatrix::identity(2),
                          HermitianMatrix::diagonal({2.0, 3.0}));
    REQUIRE_THAT(iv.s, WithinAbs(2.0, 1e-13));
    REQUIRE_THAT(iv.t, WithinAbs(3.0, 1e-13));
}

TEST_CASE("sandwich interval is tight") {
    Rng seeds(783);
    const HermitianMatrix a = random_hpd(4, 0.5, 4.0, seeds.next_u64());
    const HermitianMatrix b = random_hpd(4, 0.7, 6.0, seeds.next_u64());
    const auto iv = sandwich_interval(a, b);
    const double eps = 1e-6;
    REQUIRE(loewner_leq((iv.s * (1.0 - eps)) * a, b).holds);
    REQUIRE_FALSE(loewner_leq((iv.s * (1.0 + eps)) * a, b).holds);
    REQUIRE(loewner_leq(b, (iv.t * (1.0 + eps)) * a).holds);
    REQUIRE_FALSE(loewner_leq(b, (iv.t * (1.0 - eps)) * a).holds);
}

TEST_CASE("harmonic mean via inverses matches its representing function") {
    Rng seeds(784);
    const HermitianMatrix a = random_hpd(4, 0.5, 4.0, seeds.next_u64());
    const HermitianMatrix b = random_hpd(4, 0.5, 4.0, seeds.next_u64());
    for (double w : {0.2, 0.5, 0.8}) {
        const HermitianMatrix direct = harmonic_mean(a, b, w);
        PairContext ctx(a, b);
        const HermitianMatrix rel = ctx.transform(
            [w](double x) { return x / ((1.0 - w) * x + w); });
        REQUIRE(rel_diff(direct, rel) < 1e-11);
    }
}

TEST_CASE("loewner comparison reports slack in both directions") {
    const HermitianMatrix a = HermitianMatrix::diagonal({1.0, 1.0});
    const HermitianMatrix b = HermitianMatrix::diagonal({2.0, 3.0});
    const auto v1 = loewner_leq(a, b);
    REQUIRE(v1.holds);
    REQUIRE_THAT(v1.slack, WithinAbs(1.0, 1e-13));
    const auto v2 = loewner_leq(b, a);
    REQUIRE_FALSE(v2.holds);
    REQUIRE_THAT(v2.slack, WithinAbs(-2.0, 1e-13));
}
