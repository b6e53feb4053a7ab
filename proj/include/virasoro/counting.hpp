#pragma once

// Cycle-counting polynomials: d_n(beta) over fixed-point-free permutations
// and p_n(alpha, beta) over partial injections, each computable four
// independent ways. The routes share no code; their agreement is one of the
// standing cross-checks.

#include "virasoro/combinatorics.hpp"
#include "virasoro/poly.hpp"

namespace virasoro {

enum class CountMethod { Enumeration, ClosedForm, Recursion, Egf };

namespace detail {

// prod_{t=0}^{m-1} (x - t) / m! for a linear polynomial x; this is the
// generalized binomial coefficient binom(x, m).
inline Poly binom_poly(const Poly& x, int m) {
    Poly acc(1);
    for (int t = 0; t < m; ++t)
        acc *= x - Poly(t);
    return acc * (Rational(1) / Rational(factorial(m)));
}

// n! * [z^n] exp(sum_r s_r z^r) from E' = S' E, with s_r supplied as
// polynomial coefficients.
inline Poly egf_exp_coeff(const std::vector<Poly>& s, int n) {
    std::vector<Poly> e(static_cast<size_t>(n) + 1);
    e[0] = Poly(1);
    for (int m = 1; m <= n; ++m) {
        Poly acc;
        for (int j = 1; j <= m; ++j) {
            if (j >= static_cast<int>(s.size()) || s[static_cast<size_t>(j)].is_zero())
                continue;
            acc += s[static_cast<size_t>(j)] * e[static_cast<size_t>(m - j)] * Rational(j);
        }
        e[static_cast<size_t>(m)] = acc * make_rational(1, m);
    }
    return e[static_cast<size_t>(n)] * Rational(factorial(n));
}

} // namespace detail

inline Poly d_poly(int n, CountMethod method, int limit = kDerangementLimit) {
    Poly beta = Poly::variable(Var::Beta);
    switch (method) {
    case CountMethod::Enumeration: {
        Poly acc;
        for_each_derangement(
            n, [&](const Permutation& p) { acc += beta.pow(p.cycle_count()); }, limit);
        return acc;
    }
    case CountMethod::ClosedForm: {
        // (-1)^n n! sum_i beta^i / i! binom(-beta, n - i)
        Poly acc;
        for (int i = 0; i <= n; ++i)
            acc += beta.pow(i) * detail::binom_poly(-beta, n - i) *
                   (Rational(1) / Rational(factorial(i)));
        acc *= Rational(factorial(n)) * (n % 2 == 0 ? Rational(1) : Rational(-1));
        return acc;
    }
    case CountMethod::Recursion: {
        // d_n = (n-1)(d_{n-1} + beta d_{n-2})
        Poly dm2(1), dm1;
        if (n == 0)
            return dm2;
        for (int m = 2; m <= n; ++m) {
            Poly d = (dm1 + beta * dm2) * Rational(m - 1);
            dm2 = dm1;
            dm1 = d;
        }
        return dm1;
    }
    case CountMethod::Egf: {
        // (e^{-z} / (1-z))^beta = exp(sum_{r>=2} (beta/r) z^r)
        std::vector<Poly> s(static_cast<size_t>(n) + 1);
        for (int r = 2; r <= n; ++r)
            s[static_cast<size_t>(r)] = beta * make_rational(1, r);
        return detail::egf_exp_coeff(s, n);
    }
    }
    throw DomainError("unknown counting method");
}

inline Poly p_poly(int n, CountMethod method, int limit = kPartialInjectionLimit) {
    Poly alpha = Poly::variable(Var::Alpha);
    Poly beta = Poly::variable(Var::Beta);
    switch (method) {
    case CountMethod::Enumeration: {
        Poly acc;
        for_each_partial_injection(
            n,
            [&](const PartialInjection& psi) {
                acc += alpha.pow(psi.path_count()) * beta.pow(psi.cycle_count());
            },
            limit);
        return acc;
    }
    case CountMethod::ClosedForm: {
        // (-1)^n n! sum_i (-alpha)^i / i! binom(-beta - i, n - i)
        Poly acc;
        for (int i = 0; i <= n; ++i)
            acc += (-alpha).pow(i) * detail::binom_poly(-beta - Poly(i), n - i) *
                   (Rational(1) / Rational(factorial(i)));
        acc *= Rational(factorial(n)) * (n % 2 == 0 ? Rational(1) : Rational(-1));
        return acc;
    }
    case CountMethod::Recursion: {
        // p_{n+1} = (2n + alpha + beta) p_n - n(n + beta - 1) p_{n-1}
        Poly pm1(1);
        if (n == 0)
            return pm1;
        Poly p = alpha + beta;
        for (int m = 1; m < n; ++m) {
            Poly next = (alpha + beta + Poly(2 * m)) * p -
                        (beta + Poly(m - 1)) * pm1 * Rational(m);
            pm1 = p;
            p = next;
        }
        return p;
    }
    case CountMethod::Egf: {
        // exp(alpha z/(1-z)) (1-z)^{-beta} = exp(sum_{r>=1} (alpha + beta/r) z^r)
        std::vector<Poly> s(static_cast<size_t>(n) + 1);
        for (int r = 1; r <= n; ++r)
            s[static_cast<size_t>(r)] = alpha + beta * make_rational(1, r);
        return detail::egf_exp_coeff(s, n);
    }
    }
    throw DomainError("unknown counting method");
}

} // namespace virasoro
