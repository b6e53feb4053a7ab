#pragma once

// The rational (genus-zero) correlation generating functions G_n, computed
// three independent ways:
//
//   - a sum over fixed-point-free permutations weighted by (C/2)^cycles
//     and squared inverse differences,
//   - a beta-permanent of the weight matrix at beta = C/2,
//   - the recursion that reduces n points to n-1 and n-2 points, with the
//     derivative term expanded analytically from the closed form.
//
// Values are polynomials in the formal central charge C; points are exact
// rationals, so agreement between routes is literal equality in Q[C].

#include <map>
#include <vector>

#include "virasoro/combinatorics.hpp"
#include "virasoro/matrix.hpp"
#include "virasoro/poly.hpp"

namespace virasoro {

struct PointConfig {
    std::vector<Rational> z;

    int size() const { return static_cast<int>(z.size()); }

    void validate() const {
        for (size_t i = 0; i < z.size(); ++i)
            for (size_t j = i + 1; j < z.size(); ++j)
                if (z[i] == z[j])
                    throw DegenerateConfiguration("coincident insertion points");
    }
};

// a_ij = 1/(z_i - z_j)^2 off the diagonal, 0 on it.
inline SquareMatrix<Rational> weight_matrix(const PointConfig& cfg) {
    cfg.validate();
    int n = cfg.size();
    SquareMatrix<Rational> a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                continue;
            Rational d = cfg.z[static_cast<size_t>(i)] - cfg.z[static_cast<size_t>(j)];
            a.at(i, j) = Rational(1) / (d * d);
        }
    return a;
}

// perm_beta A = sum over all permutations of beta^{cycles} prod a_{i,pi(i)}.
// At beta = 1 this is the permanent, at beta = -1 it is (-1)^n det A.
template <class R>
R beta_permanent(const SquareMatrix<R>& a, const R& beta) {
    R total{};
    for_each_permutation(a.size(), [&](const Permutation& pi) {
        R term(1);
        for (int c = 0; c < pi.cycle_count(); ++c)
            term = term * beta;
        for (int i = 0; i < a.size(); ++i)
            term = term * a.at(i, pi.img[static_cast<size_t>(i)]);
        total = total + term;
    });
    return total;
}

inline Poly g0_permanent(const PointConfig& cfg) {
    SquareMatrix<Rational> w = weight_matrix(cfg);
    int n = cfg.size();
    if (n == 0)
        return Poly(1);
    SquareMatrix<Poly> a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            a.at(i, j) = Poly(w.at(i, j));
    return beta_permanent(a, Poly::variable(Var::C) * make_rational(1, 2));
}

inline Poly g0_derangement(const PointConfig& cfg) {
    cfg.validate();
    int n = cfg.size();
    Poly half_c = Poly::variable(Var::C) * make_rational(1, 2);
    Poly acc;
    for_each_derangement(n, [&](const Permutation& phi) {
        Rational w = 1;
        for (int i = 0; i < n; ++i) {
            Rational d =
                cfg.z[static_cast<size_t>(i)] - cfg.z[static_cast<size_t>(phi.img[static_cast<size_t>(i)])];
            w /= d * d;
        }
        acc += half_c.pow(phi.cycle_count()) * w;
    });
    return acc;
}

// The defining expansion; the permanent and the recursion are the
// cross-checks.
inline Poly g0_generating(const PointConfig& cfg) { return g0_derangement(cfg); }

namespace detail {

// d/dz_k of the closed-form sum over fixed-point-free maps of the labels,
// evaluated at the configuration. Each edge (a -> b) contributes
// -2/(z_a - z_b) through its squared difference, with the sign flipped when
// k enters as the target.
inline Poly g0_derivative_term(const std::vector<Rational>& z, const std::vector<int>& labels,
                               int k) {
    int m = static_cast<int>(labels.size());
    Poly half_c = Poly::variable(Var::C) * make_rational(1, 2);
    Poly acc;
    for_each_derangement(m, [&](const Permutation& phi) {
        Rational w = 1;
        Rational logder = 0;
        for (int i = 0; i < m; ++i) {
            int a = labels[static_cast<size_t>(i)];
            int b = labels[static_cast<size_t>(phi.img[static_cast<size_t>(i)])];
            Rational d = z[static_cast<size_t>(a)] - z[static_cast<size_t>(b)];
            w /= d * d;
            if (a == k)
                logder += Rational(-2) / d;
            else if (b == k)
                logder += Rational(2) / d;
        }
        acc += half_c.pow(phi.cycle_count()) * (w * logder);
    });
    return acc;
}

inline Poly g0_zhu_rec(const std::vector<Rational>& z, const std::vector<int>& labels,
                       std::map<std::vector<int>, Poly>& memo) {
    int n = static_cast<int>(labels.size());
    if (n == 0)
        return Poly(1);
    if (n == 1)
        return Poly();
    if (auto it = memo.find(labels); it != memo.end())
        return it->second;

    int first = labels[0];
    std::vector<int> rest(labels.begin() + 1, labels.end());
    Poly half_c = Poly::variable(Var::C) * make_rational(1, 2);
    Poly acc;
    for (size_t ki = 0; ki < rest.size(); ++ki) {
        int k = rest[ki];
        Rational z1k = z[static_cast<size_t>(first)] - z[static_cast<size_t>(k)];
        acc += g0_derivative_term(z, rest, k) * (Rational(1) / z1k);
        acc += g0_zhu_rec(z, rest, memo) * (Rational(2) / (z1k * z1k));
        std::vector<int> rest2;
        for (size_t j = 0; j < rest.size(); ++j)
            if (j != ki)
                rest2.push_back(rest[static_cast<size_t>(j)]);
        acc += half_c * g0_zhu_rec(z, rest2, memo) * pow_rational(z1k, -4);
    }
    memo[labels] = acc;
    return acc;
}

} // namespace detail

inline Poly g0_zhu(const PointConfig& cfg) {
    cfg.validate();
    std::vector<int> labels(static_cast<size_t>(cfg.size()));
    for (int i = 0; i < cfg.size(); ++i)
        labels[static_cast<size_t>(i)] = i;
    std::map<std::vector<int>, Poly> memo;
    return detail::g0_zhu_rec(cfg.z, labels, memo);
}

// Exact residual of the two-point reduction
//   (-1/x d/dx - 1/y d/dy + 1/x^2 + 1/y^2) (x-y)^{-2} = x^{-2} y^{-2},
// the rational shadow of the elliptic heat identity.
inline Rational verify_g0_pde(const Rational& x, const Rational& y) {
    if (x == 0 || y == 0 || x == y)
        throw DegenerateConfiguration("pde residual needs x, y, x-y nonzero");
    Rational u = x - y;
    Rational u2 = u * u;
    Rational lhs = Rational(2) / (x * u2 * u) - Rational(2) / (y * u2 * u) +
                   (Rational(1) / (x * x) + Rational(1) / (y * y)) / u2;
    return lhs - Rational(1) / (x * x * y * y);
}

} // namespace virasoro
