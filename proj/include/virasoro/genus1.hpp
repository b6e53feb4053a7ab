#pragma once

// Genus-one correlation generating functions in the theta basis. A
// GammaExpr maps M to the coefficient of (q d/dq)^M Theta, where Theta is
// kept abstract throughout; every equality below is coefficient-wise in
// that basis. Four routes produce the order-n expression: the
// partial-injection graph sum, the alpha,beta-extended partial permanent,
// the full-permutation sum with cycle opening, and the Zhu recursion. The
// first three agree structurally; the Zhu route agrees only as a function
// of (z, q), so it is compared numerically.

#include <complex>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "virasoro/combinatorics.hpp"
#include "virasoro/elliptic_numeric.hpp"
#include "virasoro/matrix.hpp"
#include "virasoro/poly.hpp"
#include "virasoro/qseries.hpp"
#include "virasoro/rational.hpp"
#include "virasoro/scalar_algebra.hpp"

namespace virasoro {

using GammaExpr = std::map<int, ScalarPoly>;

// Default order bound for the gamma_* constructors; callers can raise it
// explicitly. Partial-injection counts grow as A002720, so each extra
// order costs roughly a tenfold enumeration.
inline constexpr int kGammaOrderLimit = 6;

inline void gamma_add(GammaExpr& g, int m, const ScalarPoly& s) {
    if (s.is_zero())
        return;
    auto it = g.find(m);
    if (it == g.end()) {
        g.emplace(m, s);
        return;
    }
    it->second += s;
    if (it->second.is_zero())
        g.erase(it);
}

inline Poly half_central() { return Poly::variable(Var::C) * Rational(1, 2); }

// Edge weights: a fixed point carries E_2, a proper edge carries
// P_2(z_i - z_j). P_2 is even, so direction never introduces a sign.
inline SquareMatrix<ScalarPoly> g1_weight_matrix(int n) {
    SquareMatrix<ScalarPoly> w(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w.at(i, j) = (i == j) ? ScalarPoly::eis(2) : ScalarPoly::pk(2, i, j);
    return w;
}

inline void check_gamma_order(int n, int limit) {
    if (n < 0)
        throw DomainError("negative order");
    if (n > limit)
        throw LimitError("genus-one order beyond configured bound");
}

// Direct graph sum: each partial injection contributes (C/2)^cycles times
// the product of its edge weights, at key M = paths.
inline GammaExpr gamma_graph(int n, int limit = kGammaOrderLimit) {
    check_gamma_order(n, limit);
    GammaExpr g;
    if (n == 0) {
        gamma_add(g, 0, ScalarPoly(1));
        return g;
    }
    SquareMatrix<ScalarPoly> w = g1_weight_matrix(n);
    Poly hc = half_central();
    for_each_partial_injection(
        n,
        [&](const PartialInjection& psi) {
            ScalarPoly term{hc.pow(psi.cycle_count())};
            for (int i = 0; i < n; ++i)
                if (psi.img[static_cast<size_t>(i)] >= 0)
                    term *= w.at(i, psi.img[static_cast<size_t>(i)]);
            gamma_add(g, psi.path_count(), term);
        },
        limit);
    return g;
}

// Sum over all partial injections of the product of selected entries, with
// unit contribution from the empty map.
template <class R>
R partial_permanent(const SquareMatrix<R>& a, int limit = kPartialInjectionLimit) {
    R acc{};
    for_each_partial_injection(
        a.size(),
        [&](const PartialInjection& psi) {
            R term(1);
            for (int i = 0; i < a.size(); ++i)
                if (psi.img[static_cast<size_t>(i)] >= 0)
                    term = term * a.at(i, psi.img[static_cast<size_t>(i)]);
            acc += term;
        },
        limit);
    return acc;
}

// Same sum with every partial injection weighted by alpha^paths beta^cycles.
template <class R>
R alphabeta_pperm(const SquareMatrix<R>& a, const R& alpha, const R& beta,
                  int limit = kPartialInjectionLimit) {
    R acc{};
    for_each_partial_injection(
        a.size(),
        [&](const PartialInjection& psi) {
            R term(1);
            for (int t = 0; t < psi.path_count(); ++t)
                term = term * alpha;
            for (int t = 0; t < psi.cycle_count(); ++t)
                term = term * beta;
            for (int i = 0; i < a.size(); ++i)
                if (psi.img[static_cast<size_t>(i)] >= 0)
                    term = term * a.at(i, psi.img[static_cast<size_t>(i)]);
            acc += term;
        },
        limit);
    return acc;
}

// Partial-permanent route: the alpha,beta partial permanent of the weight
// matrix at beta = C/2, read off as a polynomial in the necklace marker.
inline GammaExpr gamma_pperm(int n, int limit = kGammaOrderLimit) {
    check_gamma_order(n, limit);
    if (n == 0) {
        GammaExpr g;
        gamma_add(g, 0, ScalarPoly(1));
        return g;
    }
    ScalarPoly total = alphabeta_pperm<ScalarPoly>(
        g1_weight_matrix(n), ScalarPoly{Poly::variable(Var::Alpha)},
        ScalarPoly{half_central()}, limit);
    GammaExpr g;
    for (int m = 0; m <= n; ++m)
        gamma_add(g, m, scalar_coeff_of(total, Var::Alpha, m));
    return g;
}

// One full permutation's weight in the cycle-opening sum: every cycle
// contributes (C/2) times its edge product, or opens at one edge into a
// path marked by rho. The (2/C)rho of the raw edge modifier cancels the
// (C/2) prefactor, so coefficients stay polynomial in C.
inline ScalarPoly gamma_perm_weight(const Permutation& perm) {
    std::vector<bool> seen(static_cast<size_t>(perm.size()));
    ScalarPoly weight(1);
    Poly hc = half_central();
    Poly rho = Poly::variable(Var::Rho);
    for (int start = 0; start < perm.size(); ++start) {
        if (seen[static_cast<size_t>(start)])
            continue;
        std::vector<ScalarPoly> edges;
        for (int i = start; !seen[static_cast<size_t>(i)];
             i = perm.img[static_cast<size_t>(i)]) {
            seen[static_cast<size_t>(i)] = true;
            int j = perm.img[static_cast<size_t>(i)];
            edges.push_back(i == j ? ScalarPoly::eis(2) : ScalarPoly::pk(2, i, j));
        }
        ScalarPoly closed(1);
        for (const ScalarPoly& e : edges)
            closed *= e;
        ScalarPoly opened;
        for (size_t drop = 0; drop < edges.size(); ++drop) {
            ScalarPoly rest(1);
            for (size_t t = 0; t < edges.size(); ++t)
                if (t != drop)
                    rest *= edges[t];
            opened += rest;
        }
        weight *= closed * hc + opened * rho;
    }
    return weight;
}

// Splits a rho-polynomial into a GammaExpr: rho-degree counts opened
// cycles, which is the necklace number.
inline GammaExpr rho_split(const ScalarPoly& s, int n) {
    GammaExpr g;
    for (int m = 0; m <= n; ++m)
        gamma_add(g, m, scalar_coeff_of(s, Var::Rho, m));
    return g;
}

// Permutation route: sum of cycle-opening weights over all n! permutations.
inline GammaExpr gamma_perm(int n, int limit = kGammaOrderLimit) {
    check_gamma_order(n, limit);
    ScalarPoly total;
    for_each_permutation(n, [&](const Permutation& p) { total += gamma_perm_weight(p); });
    return rho_split(total, n);
}

namespace detail {

// Zhu recursion on the sorted label vector of live points. The first label
// is reduced against the rest; removed labels are never compacted, so atoms
// stay comparable across branches. Labels are strictly increasing, hence
// every P atom below is already canonical.
inline GammaExpr gamma_zhu_rec(const std::vector<int>& labels,
                               std::map<std::vector<int>, GammaExpr>& memo) {
    if (labels.empty()) {
        GammaExpr g;
        gamma_add(g, 0, ScalarPoly(1));
        return g;
    }
    auto hit = memo.find(labels);
    if (hit != memo.end())
        return hit->second;

    int l1 = labels.front();
    std::vector<int> rest(labels.begin() + 1, labels.end());
    GammaExpr prev = gamma_zhu_rec(rest, memo);
    Poly hc = half_central();
    GammaExpr g;

    // q-derivative through the eta-conjugated weight: shifts the theta
    // power, differentiates the coefficient, and adds the (C/2)E_2 term
    // from the eta factor.
    for (const auto& [m, c] : prev) {
        gamma_add(g, m, c.dq() + ScalarPoly::eis(2) * hc * c);
        gamma_add(g, m + 1, c);
    }

    for (size_t t = 0; t < rest.size(); ++t) {
        int lk = rest[t];
        ScalarPoly p1 = ScalarPoly::pk(1, l1, lk);
        ScalarPoly p2x2 = ScalarPoly::pk(2, l1, lk) * Rational(2);
        for (const auto& [m, c] : prev) {
            gamma_add(g, m, p1 * c.dz(lk));
            gamma_add(g, m, p2x2 * c);
        }
        std::vector<int> shorter = rest;
        shorter.erase(shorter.begin() + static_cast<long>(t));
        GammaExpr lower = gamma_zhu_rec(shorter, memo);
        ScalarPoly p4 = ScalarPoly::pk(4, l1, lk) * hc;
        for (const auto& [m, c] : lower)
            gamma_add(g, m, p4 * c);
    }

    memo.emplace(labels, g);
    return g;
}

} // namespace detail

// Zhu-recursion route. Structurally it carries P_4 and P_1 atoms that the
// graph routes never produce; the two agree as functions of (z, q) through
// elliptic identities, so equality is certified by compare_numeric.
inline GammaExpr gamma_zhu(int n, int limit = kGammaOrderLimit) {
    check_gamma_order(n, limit);
    std::vector<int> labels;
    for (int i = 0; i < n; ++i)
        labels.push_back(i);
    std::map<std::vector<int>, GammaExpr> memo;
    return detail::gamma_zhu_rec(labels, memo);
}

inline GammaExpr gamma_relabel(const GammaExpr& g, const std::vector<int>& perm) {
    GammaExpr r;
    for (const auto& [m, c] : g)
        gamma_add(r, m, c.relabel(perm));
    return r;
}

// Counting image: every edge weight to 1 and C/2 to beta, necklace key to
// an alpha power. On gamma_graph(n) this reproduces the partial-injection
// counting polynomial.
inline Poly gamma_counting_poly(const GammaExpr& g) {
    Poly acc;
    for (const auto& [m, c] : g)
        acc += c.atoms_to_one().substitute(Var::C, Poly::variable(Var::Beta) * Rational(2)) *
               Poly::variable(Var::Alpha, m);
    return acc;
}

struct GammaSample {
    std::vector<Complex> z;
    Complex q;
};

struct GammaCompareReport {
    std::map<int, double> max_residual;
    double worst = 0.0;
    bool pass = false;
};

// Evaluates both expressions at every sample and records the worst
// coefficient-wise deviation per theta power.
inline GammaCompareReport compare_numeric(const GammaExpr& a, const GammaExpr& b,
                                          std::span<const GammaSample> samples,
                                          Complex c_val, double tol,
                                          EvalDomain dom = {}) {
    GammaCompareReport rep;
    ScalarPoly zero;
    for (const GammaSample& s : samples) {
        AtomEvaluator ev(s.z, s.q, dom);
        std::set<int> keys;
        for (const auto& [m, c] : a)
            keys.insert(m);
        for (const auto& [m, c] : b)
            keys.insert(m);
        for (int m : keys) {
            auto ia = a.find(m);
            auto ib = b.find(m);
            Complex va = (ia == a.end() ? zero : ia->second).eval(ev, c_val);
            Complex vb = (ib == b.end() ? zero : ib->second).eval(ev, c_val);
            double r = std::abs(va - vb);
            auto [it, fresh] = rep.max_residual.emplace(m, r);
            if (!fresh && r > it->second)
                it->second = r;
            if (r > rep.worst)
                rep.worst = r;
        }
    }
    rep.pass = rep.worst < tol;
    return rep;
}

// Concrete-theta evaluation: sum of coefficient times (q d/dq)^M theta.
// P atoms enter through their z-expansion truncated at nz, so the result
// inherits that truncation; E atoms and theta derivatives are exact.
inline QSeries<Poly> gamma_apply_theta(const GammaExpr& g, const QSeries<Rational>& theta,
                                       const std::vector<Rational>& points, int nz) {
    int nq = theta.trunc();
    QSeries<Poly> acc = QSeries<Poly>::zero(nq, theta.offset());
    QSeries<Rational> deriv = theta;
    int next = 0;
    for (const auto& [m, c] : g) {
        for (; next < m; ++next)
            deriv = deriv.qder();
        QSeries<Poly> lifted = QSeries<Poly>::zero(deriv.trunc(), deriv.offset());
        for (const auto& [e, v] : deriv.coeffs())
            lifted.set(e, Poly(v));
        acc = acc + scalar_qseries(c, points, nz, nq) * lifted;
    }
    return acc;
}

} // namespace virasoro
