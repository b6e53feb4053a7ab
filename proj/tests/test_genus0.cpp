#include <catch2/catch_amalgamated.hpp>

#include "virasoro/genus0.hpp"
#include "virasoro/sampling.hpp"

using namespace virasoro;

namespace {
Rational R(long n, long d = 1) { return make_rational(n, d); }
const Poly kC = Poly::variable(Var::C);

PointConfig seeded_config(SampleGen& gen, int n) { return PointConfig{gen.distinct_rationals(n)}; }
} // namespace

TEST_CASE("weight matrix entries and degeneracy guard", "[genus0]") {
    PointConfig cfg{{R(0), R(1), R(3)}};
    auto w = weight_matrix(cfg);
    CHECK(w.at(0, 0) == R(0));
    CHECK(w.at(0, 1) == R(1));
    CHECK(w.at(1, 0) == R(1));
    CHECK(w.at(0, 2) == R(1, 9));
    CHECK(w.at(1, 2) == R(1, 4));

    CHECK_THROWS_AS(weight_matrix(PointConfig{{R(1), R(2), R(1)}}), DegenerateConfiguration);
}

TEST_CASE("beta permanent on closed-form cases", "[genus0]") {
    // Hollow 2x2: only the swap survives, one cycle.
    SquareMatrix<Poly> hollow(2);
    hollow.at(0, 1) = Poly(5);
    hollow.at(1, 0) = Poly(5);
    Poly beta = Poly::variable(Var::Beta);
    CHECK(beta_permanent(hollow, beta) == beta * R(25));

    // Full 2x2 keeps the identity with two cycles.
    SquareMatrix<Poly> full(2);
    full.at(0, 0) = Poly(2);
    full.at(0, 1) = Poly(3);
    full.at(1, 0) = Poly(5);
    full.at(1, 1) = Poly(7);
    CHECK(beta_permanent(full, beta) == beta * beta * R(14) + beta * R(15));

    // Empty matrix: the empty permutation contributes its empty product.
    CHECK(beta_permanent(SquareMatrix<Poly>(0), beta) == Poly(1));

    // All-ones matrix counts permutations by cycles: the rising factorial.
    SquareMatrix<Poly> ones(4, Poly(1));
    Poly rising(1);
    for (int i = 0; i < 4; ++i)
        rising *= beta + Poly(i);
    CHECK(beta_permanent(ones, beta) == rising);
}

TEST_CASE("beta = -1 specializes to the signed determinant", "[genus0]") {
    SampleGen gen(5150);
    for (int n : {3, 3, 3, 4, 4, 4}) {
        SquareMatrix<Rational> a(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a.at(i, j) = gen.rational(-9, 9, 7);
        Rational perm_m1 = beta_permanent(a, Rational(-1));
        Rational expect = (n % 2 == 0 ? 1 : -1) * determinant(a);
        CHECK(perm_m1 == expect);
    }
}

TEST_CASE("determinant agrees with the 3x3 cofactor rule", "[genus0]") {
    SquareMatrix<Rational> a(3);
    a.at(0, 0) = R(1); a.at(0, 1) = R(2); a.at(0, 2) = R(3);
    a.at(1, 0) = R(0); a.at(1, 1) = R(4); a.at(1, 2) = R(5);
    a.at(2, 0) = R(1); a.at(2, 1) = R(0); a.at(2, 2) = R(6);
    // 1*(24-0) - 2*(0-5) + 3*(0-4) = 22
    CHECK(determinant(a) == R(22));

    SquareMatrix<Rational> sing(2);
    sing.at(0, 0) = R(1); sing.at(0, 1) = R(2);
    sing.at(1, 0) = R(2); sing.at(1, 1) = R(4);
    CHECK(determinant(sing) == R(0));
}

TEST_CASE("two- and three-point functions match their closed forms", "[genus0]") {
    SampleGen gen(914);
    for (int rep = 0; rep < 5; ++rep) {
        PointConfig c2 = seeded_config(gen, 2);
        Rational z12 = c2.z[0] - c2.z[1];
        CHECK(g0_generating(c2) == kC * (R(1, 2) / pow_rational(z12, 4)));

        PointConfig c3 = seeded_config(gen, 3);
        Rational d = pow_rational(c3.z[0] - c3.z[1], 2) * pow_rational(c3.z[0] - c3.z[2], 2) *
                     pow_rational(c3.z[1] - c3.z[2], 2);
        CHECK(g0_generating(c3) == kC * (Rational(1) / d));
    }
}

TEST_CASE("empty and single-point functions are 1 and 0", "[genus0]") {
    CHECK(g0_generating(PointConfig{{}}) == Poly(1));
    CHECK(g0_permanent(PointConfig{{}}) == Poly(1));
    CHECK(g0_zhu(PointConfig{{}}) == Poly(1));
    CHECK(g0_generating(PointConfig{{R(2)}}).is_zero());
    CHECK(g0_permanent(PointConfig{{R(2)}}).is_zero());
    CHECK(g0_zhu(PointConfig{{R(2)}}).is_zero());
}

TEST_CASE("derangement sum, permanent, and recursion agree exactly", "[genus0]") {
    SampleGen gen(33550336);
    for (int n = 2; n <= 5; ++n) {
        PointConfig cfg = seeded_config(gen, n);
        Poly a = g0_derangement(cfg);
        Poly b = g0_permanent(cfg);
        Poly c = g0_zhu(cfg);
        CHECK(a == b);
        CHECK(a == c);
        CHECK(!a.is_zero());
    }
}

TEST_CASE("scaling all points rescales by the homogeneity degree", "[genus0]") {
    SampleGen gen(77);
    for (int n : {3, 4}) {
        PointConfig cfg = seeded_config(gen, n);
        Rational lambda = R(3, 2);
        PointConfig scaled = cfg;
        for (auto& p : scaled.z)
            p *= lambda;
        // Every term carries n squared differences in the denominator.
        CHECK(g0_generating(scaled) == g0_generating(cfg) * pow_rational(lambda, -2 * n));
    }
}

TEST_CASE("translation and relabeling leave the value unchanged", "[genus0]") {
    SampleGen gen(1234);
    PointConfig cfg = seeded_config(gen, 4);

    PointConfig shifted = cfg;
    for (auto& p : shifted.z)
        p += R(7, 3);
    CHECK(g0_generating(shifted) == g0_generating(cfg));

    PointConfig perm = cfg;
    std::swap(perm.z[0], perm.z[2]);
    std::swap(perm.z[1], perm.z[3]);
    CHECK(g0_generating(perm) == g0_generating(cfg));
    CHECK(g0_zhu(perm) == g0_zhu(cfg));
}

TEST_CASE("two-point reduction identity holds exactly", "[genus0]") {
    SampleGen gen(60902);
    for (int rep = 0; rep < 8; ++rep) {
        auto pts = gen.distinct_rationals(2, -30, 30, 13);
        if (pts[0] == 0 || pts[1] == 0)
            continue;
        CHECK(verify_g0_pde(pts[0], pts[1]) == R(0));
    }
    CHECK_THROWS_AS(verify_g0_pde(R(0), R(1)), DegenerateConfiguration);
    CHECK_THROWS_AS(verify_g0_pde(R(2), R(2)), DegenerateConfiguration);
}

TEST_CASE("central charge degree tracks the maximal cycle packing", "[genus0]") {
    SampleGen gen(40585);
    for (int n = 2; n <= 5; ++n) {
        Poly g = g0_generating(seeded_config(gen, n));
        // Cycles have length >= 2, so at most floor(n/2) of them.
        CHECK(g.degree(Var::C) == n / 2);
        CHECK(g.coeff_of(Var::C, 0).is_zero());
    }
}
