#include <catch2/catch_amalgamated.hpp>

#include "opmeans/kwong.hpp"

#include "oracles.hpp"

using namespace opmeans;
using Catch::Matchers::WithinAbs;

TEST_CASE("sample points are validated") {
    REQUIRE_THROWS_AS(SamplePoints({}), std::invalid_argument);
    REQUIRE_THROWS_AS(SamplePoints({1.0, -2.0}), std::invalid_argument);
    REQUIRE_THROWS_AS(SamplePoints({1.0, 1.0 + 1e-14}), std::invalid_argument);
    REQUIRE_NOTHROW(SamplePoints({2.0, 1.0, 3.0}));
}

TEST_CASE("kwong matrix entries on frozen inputs") {
    const SamplePoints pts({1.0, 2.0});

    // f(x) = x: every entry (x_i + x_j)/(x_i + x_j) = 1, PSD of rank one
    const HermitianMatrix k_id = kwong_matrix(make_identity(), pts);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            REQUIRE_THAT(k_id(i, j).real(), WithinAbs(1.0, 1e-15));
    const auto eig_id = eig_hermitian(k_id);
    REQUIRE_THAT(eig_id.eigenvalues[0], WithinAbs(0.0, 1e-14));
    REQUIRE_THAT(eig_id.eigenvalues[1], WithinAbs(2.0, 1e-14));

    // f(x) = x^2: [[1, 5/3], [5/3, 2]], determinant -7/9 < 0
    const HermitianMatrix k_sq = kwong_matrix(make_square(), pts);
    REQUIRE_THAT(k_sq(0, 0).real(), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(k_sq(0, 1).real(), WithinAbs(5.0 / 3.0, 1e-15));
    REQUIRE_THAT(k_sq(1, 1).real(), WithinAbs(2.0, 1e-15));
    REQUIRE_THAT(oracle::det_lu(k_sq.matrix()).real(),
                 WithinAbs(-7.0 / 9.0, 1e-13));
    REQUIRE(eig_hermitian(k_sq).min_eigenvalue() < -0.1);

    // f(x) = 1/x: entry 1/(x_i x_j), a rank-one Gram matrix
    const HermitianMatrix k_inv = kwong_matrix(make_inverse(), pts);
    REQUIRE_THAT(k_inv(0, 0).real(), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(k_inv(0, 1).real(), WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(k_inv(1, 1).real(), WithinAbs(0.25, 1e-15));
    REQUIRE(eig_hermitian(k_inv).min_eigenvalue() > -1e-14);
}

TEST_CASE("loewner matrix entries on frozen inputs") {
    // f(x) = x^2 at {1, 2}: [[2, 3], [3, 4]], determinant -1
    const HermitianMatrix l_sq =
        loewner_matrix(make_square(), SamplePoints({1.0, 2.0}));
    REQUIRE_THAT(l_sq(0, 0).real(), WithinAbs(2.0, 1e-15));
    REQUIRE_THAT(l_sq(0, 1).real(), WithinAbs(3.0, 1e-15));
    REQUIRE_THAT(l_sq(1, 1).real(), WithinAbs(4.0, 1e-15));
    REQUIRE_THAT(oracle::det_lu(l_sq.matrix()).real(), WithinAbs(-1.0, 1e-13));

    // f(x) = sqrt(x) at {1, 4}: [[1/2, 1/3], [1/3, 1/4]], determinant 1/72
    const HermitianMatrix l_rt =
        loewner_matrix(make_sqrt(), SamplePoints({1.0, 4.0}));
    REQUIRE_THAT(l_rt(0, 0).real(), WithinAbs(0.5, 1e-15));
    REQUIRE_THAT(l_rt(0, 1).real(), WithinAbs(1.0 / 3.0, 1e-15));
    REQUIRE_THAT(l_rt(1, 1).real(), WithinAbs(0.25, 1e-15));
    REQUIRE_THAT(oracle::det_lu(l_rt.matrix()).real(),
                 WithinAbs(1.0 / 72.0, 1e-15));
    REQUIRE(eig_hermitian(l_rt).min_eigenvalue() > 0.0);
}

TEST_CASE("classification confirms the flagged kwong functions") {
    for (const char* id :
         {"identity", "sqrt", "inverse", "sinh_inv", "log1p", "power:-1",
          "power:-0.5", "power:0.3", "power:0.7", "power:1"}) {
        const auto v = classify_kwong(parse_function(id));
        INFO(id);
        REQUIRE(v.consistent());
    }
}

TEST_CASE("classification refutes functions outside the class") {
    for (const char* id : {"square", "exp", "power:1.5", "power:-1.5"}) {
        const auto v = classify_kwong(parse_function(id));
        INFO(id);
        REQUIRE(v.refuted);
        REQUIRE(v.witness.has_value());
        // the witness must reproduce: rebuild the matrix and re-check
        const HermitianMatrix k =
            kwong_matrix(parse_function(id), SamplePoints(v.witness->points));
        const double min_eig = eig_hermitian(k).min_eigenvalue();
        REQUIRE_THAT(min_eig, WithinAbs(v.witness->min_eigenvalue, 1e-12));
        REQUIRE(min_eig < 0.0);
    }
}

TEST_CASE("monotonicity search separates monotone from non-monotone") {
    REQUIRE(classify_operator_monotone(make_sqrt()).consistent());
    REQUIRE(classify_operator_monotone(make_identity()).consistent());
    REQUIRE(classify_operator_monotone(make_log1p()).consistent());
    REQUIRE(classify_operator_monotone(make_power(0.25)).consistent());
    REQUIRE(classify_operator_monotone(make_square()).refuted);
    REQUIRE(classify_operator_monotone(make_exp()).refuted);
    REQUIRE(classify_operator_monotone(make_power(1.5)).refuted);
}

TEST_CASE("decreasing variant accepts reciprocal-type functions") {
    REQUIRE(classify_operator_monotone_decreasing(make_inverse()).consistent());
    REQUIRE(
        classify_operator_monotone_decreasing(make_power(-0.5)).consistent());
    REQUIRE(classify_operator_monotone_decreasing(make_sqrt()).refuted);
}

TEST_CASE("a two-point refutation of the square function by hand") {
    // the 2x2 kwong matrix at {1, 2} has negative determinant, so the search
    // space genuinely contains the counterexample the classifier must find
    const auto v = classify_kwong(make_square(), 2, 400);
    REQUIRE(v.refuted);
    REQUIRE(v.witness->points.size() == 2);
}

TEST_CASE("equivalence of the kwong and transformed-monotone searches") {
    for (const ScalarFunction& f : function_catalog()) {
        if (f.id() == "exp") continue;  // overflow-dominated, checked below
        const auto chk = check_audenaert_equivalence(f);
        INFO(f.id());
        REQUIRE(chk.coherent);
    }
    // exp: both sides must refute, skips allowed
    const auto chk = check_audenaert_equivalence(make_exp());
    REQUIRE(chk.kwong_verdict.refuted);
    REQUIRE(chk.transform_monotone.refuted);
    REQUIRE(chk.coherent);
}

TEST_CASE("transform nonnegativity probe flags sign changes") {
    const auto good = check_audenaert_equivalence(make_sqrt());
    REQUIRE(good.transform_nonnegative);
    FunctionClaims none;
    const ScalarFunction dipping(
        "dipper", [](double x) { return x - 2.0; }, nullptr, none, 0.0, "x-2");
    const auto bad = check_audenaert_equivalence(dipping);
    REQUIRE_FALSE(bad.transform_nonnegative);
}

TEST_CASE("power transform check on a kwong function") {
    // sqrt with p = 0.5: transform x^0.5 sqrt(x^0.5) = x^0.75 is monotone,
    // the ratio is x^-0.25, decreasing; no part can be violated
    const auto r = check_theorem31(make_sqrt(), 0.5);
    REQUIRE(r.part_i_applicable);
    REQUIRE(r.part_ii_applicable);
    REQUIRE(r.part_iii_applicable);
    REQUIRE_FALSE(r.part_i_violated);
    REQUIRE_FALSE(r.part_ii_violated);
    REQUIRE_FALSE(r.part_iii_violated);
    REQUIRE(r.transform_monotone.consistent());
    REQUIRE(r.ratio_decreasing.consistent());
}

TEST_CASE("power transform check does not claim more than it should") {
    // square with p = 1: the transform x^1 (x^1)^2 = x^3 fails monotonicity,
    // so part (i) has no premise and stays silent about the (false)
    // conclusion
    const auto r = check_theorem31(make_square(), 1.0);
    REQUIRE(r.part_i_applicable);
    REQUIRE(r.transform_monotone.refuted);
    REQUIRE(r.f_kwong.refuted);
    REQUIRE_FALSE(r.part_i_violated);
    // p = 0.25: parts (ii)/(iii) need the kwong flag, which square lacks
    const auto r2 = check_theorem31(make_square(), 0.25);
    REQUIRE_FALSE(r2.part_ii_applicable);
    REQUIRE_FALSE(r2.part_iii_applicable);
}

TEST_CASE("power transform check across flagged functions and exponents") {
    for (const char* id : {"sqrt", "identity", "inverse", "log1p", "sinh_inv",
                           "power:0.3", "power:-0.5"}) {
        for (double p : {0.0, 0.25, 0.5, 1.0, 2.0}) {
            const auto r = check_theorem31(parse_function(id), p);
            INFO(id << " p=" << p);
            REQUIRE_FALSE(r.part_i_violated);
            REQUIRE_FALSE(r.part_ii_violated);
            REQUIRE_FALSE(r.part_iii_violated);
        }
    }
}

TEST_CASE("convex transfer check on the square function") {
    const auto r = check_theorem32(make_square(), 0.5);
    REQUIRE(r.premise_convex);
    REQUIRE_THAT(r.g_at_zero, WithinAbs(0.0, 1e-12));
    REQUIRE(r.main.consistent());          // x^2 with p=1/2 feeds back sqrt-like
    REQUIRE(r.shifted_monotone.consistent());  // x^2/x = x is monotone
    REQUIRE(r.power_kwong.consistent());
    REQUIRE_FALSE(r.violated);
}

TEST_CASE("convex transfer check on the inverse at several exponents") {
    // p = 1/2: 1/x^p over x^p is 1/x, a kwong function
    const auto r1 = check_theorem32(make_inverse(), 0.5);
    REQUIRE(r1.main.consistent());
    REQUIRE_FALSE(r1.violated);
    // p = 1: the candidate is x^-2, outside the class; the record must say
    // so rather than be smoothed over (the hypothesis g(0) < infinity fails)
    const auto r2 = check_theorem32(make_inverse(), 1.0);
    REQUIRE(r2.main.refuted);
    REQUIRE(r2.violated);
    REQUIRE_THROWS_AS(check_theorem32(make_square(), 1.5),
                      std::invalid_argument);
}

TEST_CASE("richardson extrapolation recovers the value at zero") {
    FunctionClaims none;
    const ScalarFunction affine("affine", [](double x) { return 3.0 + 2.0 * x; },
                                nullptr, none, -1.0, "3 + 2x");
    REQUIRE_THAT(extrapolate_at_zero(affine), WithinAbs(3.0, 1e-9));
    const ScalarFunction curved("curved",
                                [](double x) { return 1.0 + x + 4.0 * x * x; },
                                nullptr, none, -1.0, "1 + x + 4x^2");
    REQUIRE_THAT(extrapolate_at_zero(curved), WithinAbs(1.0, 1e-7));
}

TEST_CASE("convexity search separates convex from non-convex") {
    REQUIRE(classify_operator_convex(make_square()).consistent());
    REQUIRE(classify_operator_convex(make_inverse()).consistent());
    REQUIRE(classify_operator_convex(make_identity()).consistent());
    REQUIRE(classify_operator_convex(make_power(1.5)).consistent());

    const auto cube = classify_operator_convex(make_power(3.0));
    REQUIRE(cube.refuted);
    REQUIRE(cube.witness.has_value());
    REQUIRE(cube.witness->slack < 0.0);

    const auto ex = classify_operator_convex(make_exp());
    REQUIRE(ex.refuted);
}

TEST_CASE("convexity witnesses reproduce standalone") {
    const auto cube = classify_operator_convex(make_power(3.0));
    REQUIRE(cube.witness.has_value());
    const auto& w = *cube.witness;
    const ScalarFunction g = make_power(3.0);
    const HermitianMatrix mix = (1.0 - w.alpha) * w.A + w.alpha * w.B;
    const HermitianMatrix lhs = apply_scalar_function(mix, g);
    const HermitianMatrix rhs = (1.0 - w.alpha) * apply_scalar_function(w.A, g) +
                                w.alpha * apply_scalar_function(w.B, g);
    const double denom =
        std::max(1.0, 0.5 * (lhs.frobenius_norm() + rhs.frobenius_norm()));
    const double slack = eig_hermitian(rhs - lhs).min_eigenvalue() / denom;
    REQUIRE_THAT(slack, WithinAbs(w.slack, 1e-12));
}

TEST_CASE("classification skips but does not fail on overflowing functions") {
    const auto v = classify_kwong(make_exp());
    REQUIRE(v.refuted);  // found on the moderate point sets
    const auto m = classify_operator_monotone(make_exp());
    REQUIRE(m.refuted);
}
