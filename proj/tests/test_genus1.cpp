// Genus-one generating functions: closed forms for orders 1..3, structural
// agreement of the graph, partial-permanent, and permutation routes, the
// numeric agreement of the Zhu recursion, and the counting image.

#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <vector>

#include "virasoro/counting.hpp"
#include "virasoro/genus0.hpp"
#include "virasoro/genus1.hpp"
#include "virasoro/sampling.hpp"

using namespace virasoro;

namespace {

ScalarPoly e2() { return ScalarPoly::eis(2); }
ScalarPoly hc_e2() { return e2() * half_central(); }
ScalarPoly p2(int i, int j) { return ScalarPoly::pk(2, i, j); }

// The order-3 closed form, line by line as displayed, labels 0,1,2.
ScalarPoly sum_p2() { return p2(0, 1) + p2(0, 2) + p2(1, 2); }
ScalarPoly sum_p2_sq() {
    return p2(0, 1).pow(2) + p2(0, 2).pow(2) + p2(1, 2).pow(2);
}
ScalarPoly sum_p2_pairs() {
    return p2(0, 1) * p2(0, 2) + p2(0, 1) * p2(1, 2) + p2(0, 2) * p2(1, 2);
}

GammaExpr order3_identity_line() {
    GammaExpr g;
    gamma_add(g, 3, ScalarPoly(1));
    gamma_add(g, 2, hc_e2() * Rational(3));
    gamma_add(g, 1, hc_e2().pow(2) * Rational(3));
    gamma_add(g, 0, hc_e2().pow(3));
    return g;
}

GammaExpr order3_transposition_lines() {
    Poly c = Poly::variable(Var::C);
    GammaExpr g;
    gamma_add(g, 2, sum_p2() * Rational(2));
    gamma_add(g, 1, e2() * sum_p2() * c + sum_p2_sq() * half_central());
    gamma_add(g, 0, e2() * sum_p2_sq() * (c * c * Rational(1, 4)));
    return g;
}

GammaExpr order3_cycle_lines() {
    GammaExpr g;
    gamma_add(g, 1, sum_p2_pairs() * Rational(2));
    gamma_add(g, 0, p2(0, 1) * p2(0, 2) * p2(1, 2) * Poly::variable(Var::C));
    return g;
}

GammaExpr gamma_sum(const GammaExpr& a, const GammaExpr& b) {
    GammaExpr r = a;
    for (const auto& [m, c] : b)
        gamma_add(r, m, c);
    return r;
}

} // namespace

TEST_CASE("closed forms at orders 0, 1, 2", "[genus1]") {
    SECTION("order 0 is the bare theta") {
        GammaExpr g = gamma_graph(0);
        REQUIRE(g.size() == 1);
        CHECK(g.at(0) == ScalarPoly(1));
    }
    SECTION("order 1") {
        GammaExpr want;
        gamma_add(want, 1, ScalarPoly(1));
        gamma_add(want, 0, hc_e2());
        CHECK(gamma_graph(1) == want);
        CHECK(gamma_pperm(1) == want);
        CHECK(gamma_perm(1) == want);
        CHECK(gamma_zhu(1) == want);
    }
    SECTION("order 2") {
        GammaExpr want;
        gamma_add(want, 2, ScalarPoly(1));
        gamma_add(want, 1, e2() * Poly::variable(Var::C) + p2(0, 1) * Rational(2));
        gamma_add(want, 0, hc_e2().pow(2) + p2(0, 1).pow(2) * half_central());
        CHECK(gamma_graph(2) == want);
        CHECK(gamma_pperm(2) == want);
        CHECK(gamma_perm(2) == want);
    }
}

TEST_CASE("order 3 closed form and its line grouping", "[genus1]") {
    GammaExpr expected = gamma_sum(
        gamma_sum(order3_identity_line(), order3_transposition_lines()),
        order3_cycle_lines());

    SECTION("total matches the displayed expression term for term") {
        CHECK(gamma_graph(3) == expected);
        CHECK(gamma_perm(3) == expected);
    }
    SECTION("identity permutation gives the first line") {
        Permutation id{{0, 1, 2}};
        CHECK(rho_split(gamma_perm_weight(id), 3) == order3_identity_line());
    }
    SECTION("transpositions give the middle lines") {
        ScalarPoly total = gamma_perm_weight(Permutation{{1, 0, 2}}) +
                           gamma_perm_weight(Permutation{{2, 1, 0}}) +
                           gamma_perm_weight(Permutation{{0, 2, 1}});
        CHECK(rho_split(total, 3) == order3_transposition_lines());
    }
    SECTION("3-cycles give the last lines") {
        ScalarPoly total = gamma_perm_weight(Permutation{{1, 2, 0}}) +
                           gamma_perm_weight(Permutation{{2, 0, 1}});
        CHECK(rho_split(total, 3) == order3_cycle_lines());
    }
}

TEST_CASE("partial permanents", "[genus1]") {
    SECTION("order 1 adds the single entry to the empty map") {
        SquareMatrix<Poly> a(1, Poly::variable(Var::C));
        CHECK(partial_permanent(a) == Poly(1) + Poly::variable(Var::C));
    }
    SECTION("order 2 enumerates all seven partial injections") {
        SquareMatrix<Rational> a(2);
        a.at(0, 0) = 2;
        a.at(0, 1) = 3;
        a.at(1, 0) = 5;
        a.at(1, 1) = 7;
        // 1 + 2 + 3 + 5 + 7 + 2*7 + 3*5
        CHECK(partial_permanent(a) == Rational(47));
    }
    SECTION("zero matrix leaves only the empty map") {
        SquareMatrix<Rational> a(3);
        CHECK(partial_permanent(a) == Rational(1));
    }
    SECTION("all-ones alphabeta permanent is the counting polynomial") {
        for (int n = 1; n <= 5; ++n) {
            SquareMatrix<Poly> a(n, Poly(1));
            Poly got = alphabeta_pperm<Poly>(a, Poly::variable(Var::Alpha),
                                             Poly::variable(Var::Beta));
            CHECK(got == p_poly(n, CountMethod::Enumeration));
        }
    }
    SECTION("alpha = beta = 1 collapses to the plain partial permanent") {
        SquareMatrix<Rational> a(3);
        SampleGen gen(19);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                a.at(i, j) = Rational(gen.pick_int(-9, 9), gen.pick_int(1, 5));
        CHECK(alphabeta_pperm<Rational>(a, 1, 1) == partial_permanent(a));
    }
}

TEST_CASE("graph, pperm, and perm routes agree structurally", "[genus1]") {
    for (int n = 0; n <= 5; ++n) {
        GammaExpr graph = gamma_graph(n);
        INFO("n = " << n);
        CHECK(gamma_pperm(n) == graph);
        CHECK(gamma_perm(n) == graph);
    }
}

TEST_CASE("expression structure", "[genus1]") {
    SECTION("keys stay in range and the top coefficient is 1") {
        for (int n = 1; n <= 5; ++n) {
            GammaExpr g = gamma_graph(n);
            INFO("n = " << n);
            CHECK(g.begin()->first >= 0);
            CHECK(g.rbegin()->first == n);
            CHECK(g.at(n) == ScalarPoly(1));
        }
    }
    SECTION("label relabelling is a symmetry") {
        GammaExpr g4 = gamma_graph(4);
        CHECK(gamma_relabel(g4, {1, 0, 2, 3}) == g4);
        CHECK(gamma_relabel(g4, {3, 2, 1, 0}) == g4);
        CHECK(gamma_relabel(g4, {1, 2, 3, 0}) == g4);
        GammaExpr g3 = gamma_graph(3);
        CHECK(gamma_relabel(g3, {2, 0, 1}) == g3);
    }
    SECTION("necklace-free part of M = 0 is the derangement sum over P2") {
        for (int n = 2; n <= 4; ++n) {
            ScalarPoly m0 = gamma_graph(n).at(0);
            ScalarPoly pure;
            for (const auto& [mono, c] : m0.terms()) {
                bool has_eis = false;
                for (const Atom& a : mono)
                    if (a.kind == Atom::Kind::Eis)
                        has_eis = true;
                if (!has_eis)
                    pure += scalar_term(mono, c);
            }
            ScalarPoly expected;
            for_each_derangement(n, [&](const Permutation& d) {
                ScalarPoly term{half_central().pow(d.cycle_count())};
                for (int i = 0; i < n; ++i)
                    term *= ScalarPoly::pk(2, i, d.img[static_cast<size_t>(i)]);
                expected += term;
            });
            INFO("n = " << n);
            CHECK(pure == expected);
        }
    }
    SECTION("order bound") {
        CHECK_THROWS_AS(gamma_graph(3, 2), LimitError);
        CHECK_THROWS_AS(gamma_zhu(7), LimitError);
        CHECK_NOTHROW(gamma_graph(3, 3));
    }
}

TEST_CASE("counting image reproduces the injection polynomial", "[genus1]") {
    for (int n = 0; n <= 6; ++n) {
        INFO("n = " << n);
        CHECK(gamma_counting_poly(gamma_graph(n)) ==
              p_poly(n, CountMethod::Recursion));
    }
}

TEST_CASE("Zhu route: exact structure at low order", "[genus1]") {
    SECTION("order 2 matches the graph form except the known identity gap") {
        GammaExpr zhu = gamma_zhu(2);
        GammaExpr graph = gamma_graph(2);
        CHECK(zhu.at(2) == graph.at(2));
        CHECK(zhu.at(1) == graph.at(1));
        // The M = 0 coefficients differ by (C/2) times the quadratic
        // P-identity, which vanishes as a function of (z, q).
        ScalarPoly identity_gap =
            e2().dq() + e2() * p2(0, 1) * Rational(2) + ScalarPoly::pk(4, 0, 1) -
            p2(0, 1).pow(2);
        CHECK(zhu.at(0) - graph.at(0) == identity_gap * half_central());
    }
}

TEST_CASE("Zhu route agrees with the graph sum numerically", "[genus1]") {
    SampleGen gen(2026);
    Complex c_val(0.7, 0.0);
    for (int n = 2; n <= 4; ++n) {
        std::vector<GammaSample> samples;
        for (int s = 0; s < 5; ++s) {
            GammaSample smp;
            smp.z = gen.separated_points(n, 0.4, 0.3);
            smp.q = gen.annulus(0.02, 0.1);
            samples.push_back(smp);
        }
        GammaCompareReport rep =
            compare_numeric(gamma_zhu(n), gamma_graph(n), samples, c_val, 1e-7);
        INFO("n = " << n << " worst residual " << rep.worst);
        CHECK(rep.pass);
    }
}

TEST_CASE("concrete theta evaluation", "[genus1]") {
    SECTION("order 0 returns theta itself") {
        QSeries<Rational> eta = eta_series(10);
        QSeries<Poly> got = gamma_apply_theta(gamma_graph(0), eta, {}, 10);
        CHECK(got.offset() == Rational(1, 24));
        for (int e = 0; e < 10; ++e)
            CHECK(got.coeff(e) == Poly(eta.coeff(e)));
    }
    SECTION("order 1 on eta uses the eta logarithmic derivative") {
        // (C/2) E2 eta + q d/dq eta = ((C-1)/2) E2 eta.
        int nq = 12;
        QSeries<Rational> eta = eta_series(nq);
        QSeries<Poly> got = gamma_apply_theta(gamma_graph(1), eta, {Rational(0)}, nq);
        QSeries<Rational> e2eta = eisenstein(2, nq) * eta;
        Poly scale = (Poly::variable(Var::C) - Poly(1)) * Rational(1, 2);
        for (int e = 0; e < nq; ++e) {
            INFO("coefficient " << e);
            CHECK(got.coeff(e) == scale * e2eta.coeff(e));
        }
    }
    SECTION("order 1 on the constant series") {
        QSeries<Rational> one = QSeries<Rational>::constant(1, 8);
        QSeries<Poly> got = gamma_apply_theta(gamma_graph(1), one, {Rational(0)}, 8);
        QSeries<Rational> e2s = eisenstein(2, 8);
        for (int e = 0; e < 8; ++e)
            CHECK(got.coeff(e) == Poly::variable(Var::C) * Rational(1, 2) * e2s.coeff(e));
    }
}
