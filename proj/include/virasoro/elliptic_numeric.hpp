#pragma once

// Floating-point evaluation of the elliptic kernels. This path shares no
// series plumbing with elliptic_series.hpp: Eisenstein sums are Lambert
// series in doubles, theta_1 and eta are summed/multiplied directly from
// their defining expressions. It exists so the exact layer has something
// independent to disagree with.
//
// Accuracy: the z-expansion of P_k converges like (|z| / |log q|)^n with an
// extra binom(n-1, k-1) factor, so the worst corner of the default domain
// (|z| = 1, |q| = 0.2, large k) is only good to ~1e-5 at depth 40. The
// verification suites sample well inside the domain, where the error floor
// sits below 1e-10.

#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "virasoro/elliptic_series.hpp"
#include "virasoro/errors.hpp"
#include "virasoro/rational.hpp"

namespace virasoro {

using Complex = std::complex<double>;

struct EvalDomain {
    double z_max = 1.0;
    double q_max = 0.2;
    int n_z = 40; // z-expansion depth for P_k
    int n_q = 40; // Lambert / product / theta depth
};

namespace detail {
inline void require_finite(Complex v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw DomainError(std::string(what) + " evaluated to a non-finite value");
}
} // namespace detail

// E_k(q) = -B_k/k! + (2/(k-1)!) sum_{m >= 1} m^{k-1} q^m / (1 - q^m).
inline Complex eisenstein_eval(int k, Complex q, int n_q = 40) {
    if (k < 2)
        throw DomainError("Eisenstein index must be at least 2");
    if (k % 2 != 0)
        return 0.0;
    if (std::abs(q) >= 1.0)
        throw DomainError("Eisenstein evaluation needs |q| < 1");
    double lg = 0.0; // log((k-1)!)
    for (int i = 2; i < k; ++i)
        lg += std::log(static_cast<double>(i));
    Complex acc = 0.0;
    Complex qm = 1.0;
    for (int m = 1; m <= n_q; ++m) {
        qm *= q;
        // m^{k-1}/(k-1)! in log space; k can reach ~50 before double overflow
        // would otherwise bite.
        double scale = std::exp((k - 1) * std::log(static_cast<double>(m)) - lg);
        acc += scale * qm / (1.0 - qm);
    }
    Complex result = 2.0 * acc - to_double(bernoulli(k) / Rational(factorial(k)));
    detail::require_finite(result, "E_k");
    return result;
}

// eta(q) = q^{1/24} prod_{n >= 1} (1 - q^n). Complex q uses the principal
// branch of q^{1/24}; the same branch convention feeds theta_1 below, so
// ratios of the two are branch-independent.
inline Complex eta_eval(Complex q, int n_q = 40) {
    if (std::abs(q) >= 1.0)
        throw DomainError("eta evaluation needs |q| < 1");
    Complex acc = std::exp(std::log(q) / 24.0);
    Complex qn = 1.0;
    for (int n = 1; n <= n_q; ++n) {
        qn *= q;
        acc *= 1.0 - qn;
    }
    detail::require_finite(acc, "eta");
    return acc;
}

// theta_1(z,q) = i sum_{n in Z} (-1)^n q^{(2n+1)^2/8} e^{z(2n+1)/2}.
// (2n+1)^2 = 1 (mod 8), so every term carries the same fractional power
// q^{1/8}, taken on the principal branch.
inline Complex theta1_eval(Complex z, Complex q, int n_terms = 40) {
    if (std::abs(q) >= 1.0)
        throw DomainError("theta_1 evaluation needs |q| < 1");
    Complex logq = std::log(q);
    Complex acc = 0.0;
    for (int n = -n_terms; n <= n_terms; ++n) {
        double h = n + 0.5;
        Complex term = std::exp(logq * (h * h / 2.0) + z * h);
        acc += (n % 2 == 0) ? term : -term;
    }
    Complex result = Complex(0.0, 1.0) * acc;
    detail::require_finite(result, "theta_1");
    return result;
}

// P_k(z,q) = 1/z^k + (-1)^k sum_{n >= k, n even} binom(n-1,k-1) E_n(q) z^{n-k}.
inline Complex pk_eval(int k, Complex z, Complex q, const EvalDomain& dom = {}) {
    if (k < 1)
        throw DomainError("P_k needs k >= 1");
    if (z == 0.0)
        throw PoleError("P_k has a pole at z = 0");
    if (std::abs(z) > dom.z_max || std::abs(q) > dom.q_max)
        throw DomainError("P_k evaluation outside the configured domain");
    Complex acc = std::pow(z, -k);
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    std::vector<Complex> zpow(static_cast<size_t>(dom.n_z), 1.0);
    for (int e = 1; e < dom.n_z; ++e)
        zpow[static_cast<size_t>(e)] = zpow[static_cast<size_t>(e - 1)] * z;
    for (int n = std::max(k, 2); n - k < dom.n_z; ++n) {
        if (n % 2 != 0)
            continue;
        double binom_nk = to_double(Rational(binomial(n - 1, k - 1)));
        acc += sign * binom_nk * eisenstein_eval(n, q, dom.n_q) * zpow[static_cast<size_t>(n - k)];
    }
    detail::require_finite(acc, "P_k");
    return acc;
}

// K(z,q) = z exp(-sum_{n >= 2, n even} (1/n) E_n(q) z^n), the exponential of
// -P_0 with the log z term peeled off. Vanishes linearly at z = 0.
inline Complex prime_form_eval(Complex z, Complex q, const EvalDomain& dom = {}) {
    if (std::abs(z) > dom.z_max || std::abs(q) > dom.q_max)
        throw DomainError("prime form evaluation outside the configured domain");
    Complex acc = 0.0;
    Complex zn = 1.0;
    for (int n = 1; n < dom.n_z; ++n) {
        zn *= z;
        if (n % 2 != 0 || n < 2)
            continue;
        acc += eisenstein_eval(n, q, dom.n_q) * zn / static_cast<double>(n);
    }
    Complex result = z * std::exp(-acc);
    detail::require_finite(result, "prime form");
    return result;
}

// Residual of
//   (q d/dq - P_1(x) d/dx - P_1(y) d/dy + P_2(x) + P_2(y)) P_2(x-y)
//     = P_2(x) P_2(y)
// with q d/dq P_2 = 3 P_4 - P_2^2 - 2 P_1 P_3 and d/dz P_2 = -2 P_3
// substituted analytically, so the check involves no finite differencing.
struct PdeSample {
    Complex x, y, q;
};

struct PdeReport {
    double max_residual = 0.0;
    std::vector<double> residuals;
};

inline Complex weierstrass_pde_residual(const PdeSample& s, const EvalDomain& dom = {}) {
    Complex u = s.x - s.y;
    Complex p2u = pk_eval(2, u, s.q, dom);
    Complex p2x = pk_eval(2, s.x, s.q, dom);
    Complex p2y = pk_eval(2, s.y, s.q, dom);
    Complex qd_p2u = 3.0 * pk_eval(4, u, s.q, dom) - p2u * p2u -
                     2.0 * pk_eval(1, u, s.q, dom) * pk_eval(3, u, s.q, dom);
    Complex p3u = pk_eval(3, u, s.q, dom);
    return qd_p2u + 2.0 * pk_eval(1, s.x, s.q, dom) * p3u -
           2.0 * pk_eval(1, s.y, s.q, dom) * p3u + (p2x + p2y) * p2u - p2x * p2y;
}

inline PdeReport verify_weierstrass_pde(std::span<const PdeSample> samples,
                                        const EvalDomain& dom = {}) {
    PdeReport rep;
    for (const PdeSample& s : samples) {
        double r = std::abs(weierstrass_pde_residual(s, dom));
        rep.residuals.push_back(r);
        rep.max_residual = std::max(rep.max_residual, r);
    }
    return rep;
}

// Bridges from the exact layer, for cross-checking the two paths against
// each other. q^offset uses the principal branch, matching eta/theta above.
inline Complex qseries_eval(const QSeries<Rational>& s, Complex q) {
    Complex acc = 0.0;
    for (const auto& [e, v] : s.coeffs()) {
        Complex qe = 1.0;
        for (int i = 0; i < e; ++i)
            qe *= q;
        acc += to_double(v) * qe;
    }
    if (s.offset() != 0)
        acc *= std::exp(std::log(q) * to_double(s.offset()));
    detail::require_finite(acc, "q-series");
    return acc;
}

inline Complex zseries_eval(const ZSeries& s, Complex z, Complex q) {
    if (z == 0.0 && s.pole() > 0)
        throw PoleError("z-series evaluated on its pole");
    Complex acc = 0.0;
    for (const auto& [e, v] : s.coeffs()) {
        Complex ze = 1.0;
        for (int i = 0; i < std::abs(e); ++i)
            ze *= z;
        if (e < 0)
            ze = 1.0 / ze;
        acc += qseries_eval(v, q) * ze;
    }
    detail::require_finite(acc, "z-series");
    return acc;
}

} // namespace virasoro
