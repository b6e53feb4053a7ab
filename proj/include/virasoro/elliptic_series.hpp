#pragma once

// Laurent expansions in z whose coefficients are exact q-series: the
// elliptic kernels P_k(z,q) and the identities among them, checked
// coefficient by coefficient. A ZSeries stores z^e coefficients for
// e in [-pole, trunc); exponents below -pole are exactly zero, exponents
// at trunc and above are unknown. Binary operations intersect validity
// windows the same way the q-layer does.

#include <map>
#include <utility>

#include "virasoro/qseries.hpp"

namespace virasoro {

class ZSeries {
  public:
    using Coeff = QSeries<Rational>;

    ZSeries(int pole, int trunc, int nq) : pole_(pole), trunc_(trunc), nq_(nq) {
        if (pole_ < 0)
            throw DomainError("negative pole order");
        if (trunc_ <= -pole_)
            throw DomainError("empty z-window");
        if (nq_ < 1)
            throw DomainError("z-series needs a positive q-truncation");
    }

    static ZSeries constant_q(const Coeff& c, int nz) {
        ZSeries s(0, nz, c.trunc());
        s.set(0, c);
        return s;
    }

    int pole() const { return pole_; }
    int trunc() const { return trunc_; }
    int nq() const { return nq_; }
    const std::map<int, Coeff>& coeffs() const { return c_; }

    void set(int e, const Coeff& v) {
        if (e < -pole_ || e >= trunc_)
            throw DomainError("z-exponent outside window");
        if (v.offset() != 0)
            throw DomainError("z-series coefficients must have integral q-support");
        Coeff t = v.truncated(nq_);
        if (t.is_zero())
            c_.erase(e);
        else
            c_.insert_or_assign(e, std::move(t));
    }

    Coeff coeff(int e) const {
        if (e >= trunc_)
            throw DomainError("z-coefficient beyond truncation");
        auto it = c_.find(e);
        return it == c_.end() ? Coeff::zero(nq_) : it->second;
    }

    bool is_zero() const { return c_.empty(); }

    friend ZSeries operator+(const ZSeries& a, const ZSeries& b) {
        ZSeries r(std::max(a.pole_, b.pole_), std::min(a.trunc_, b.trunc_),
                  std::min(a.nq_, b.nq_));
        for (const auto& [e, v] : a.c_)
            if (e < r.trunc_)
                r.add_coeff(e, v);
        for (const auto& [e, v] : b.c_)
            if (e < r.trunc_)
                r.add_coeff(e, v);
        return r;
    }

    friend ZSeries operator-(const ZSeries& a) { return a.scaled(Rational(-1)); }
    friend ZSeries operator-(const ZSeries& a, const ZSeries& b) { return a + (-b); }

    friend ZSeries operator*(const ZSeries& a, const ZSeries& b) {
        ZSeries r(a.pole_ + b.pole_, std::min(a.trunc_ - b.pole_, b.trunc_ - a.pole_),
                  std::min(a.nq_, b.nq_));
        for (const auto& [ea, va] : a.c_)
            for (const auto& [eb, vb] : b.c_) {
                if (ea + eb >= r.trunc_)
                    continue;
                r.add_coeff(ea + eb, va * vb);
            }
        return r;
    }

    ZSeries scaled(const Rational& s) const {
        ZSeries r(pole_, trunc_, nq_);
        if (s == 0)
            return r;
        for (const auto& [e, v] : c_)
            r.c_.insert_or_assign(e, v.scaled(s));
        return r;
    }

    // Multiplication by a z-independent q-series.
    ZSeries mul_q(const Coeff& f) const {
        ZSeries r(pole_, trunc_, std::min(nq_, f.trunc()));
        for (const auto& [e, v] : c_) {
            Coeff w = v * f;
            if (!w.is_zero())
                r.c_.insert_or_assign(e, std::move(w));
        }
        return r;
    }

    ZSeries dz() const {
        ZSeries r(pole_ + 1, trunc_ - 1, nq_);
        for (const auto& [e, v] : c_) {
            if (e == 0)
                continue;
            r.c_.insert_or_assign(e - 1, v.scaled(Rational(e)));
        }
        return r;
    }

    ZSeries qder() const {
        ZSeries r(pole_, trunc_, nq_);
        for (const auto& [e, v] : c_) {
            Coeff w = v.qder();
            if (!w.is_zero())
                r.c_.insert_or_assign(e, std::move(w));
        }
        return r;
    }

    // Exact evaluation at a nonzero rational point inside the annulus of
    // formal validity. The pole terms contribute exact powers.
    Coeff eval_z(const Rational& z) const {
        if (z == 0 && pole_ > 0)
            throw PoleError("z-series evaluated on its pole");
        Coeff acc = Coeff::zero(nq_);
        for (const auto& [e, v] : c_)
            acc = acc + v.scaled(pow_rational(z, e));
        return acc;
    }

  private:
    int pole_;
    int trunc_;
    int nq_;
    std::map<int, Coeff> c_;

    void add_coeff(int e, const Coeff& v) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            Coeff t = v.truncated(nq_);
            if (!t.is_zero())
                c_.insert_or_assign(e, std::move(t));
            return;
        }
        Coeff s = (it->second + v).truncated(nq_);
        if (s.is_zero())
            c_.erase(it);
        else
            it->second = std::move(s);
    }
};

// Agreement on the intersection of the two validity windows.
inline bool agree_z(const ZSeries& a, const ZSeries& b) {
    int lo = -std::max(a.pole(), b.pole());
    int hi = std::min(a.trunc(), b.trunc());
    for (int e = lo; e < hi; ++e)
        if (!agree(a.coeff(e), b.coeff(e)))
            return false;
    return true;
}

// P_k(z,q) = 1/z^k + (-1)^k sum_{n >= k} binom(n-1, k-1) E_n(q) z^{n-k}
// for k >= 1. Only even n contribute.
inline ZSeries pk_series(int k, int nz, int nq) {
    if (k < 1)
        throw DomainError("P_k needs k >= 1");
    ZSeries s(k, nz, nq);
    s.set(-k, QSeries<Rational>::constant(Rational(1), nq));
    Rational sign = (k % 2 == 0) ? 1 : -1;
    for (int n = std::max(k, 2); n - k < nz; ++n) {
        if (n % 2 != 0)
            continue;
        QSeries<Rational> en = eisenstein(n, nq).scaled(sign * Rational(binomial(n - 1, k - 1)));
        s.set(n - k, en);
    }
    return s;
}

// P_0 = -log z + sum_{k >= 2} (1/k) E_k(q) z^k. The log coefficient rides
// along separately; z-derivatives and q-derivatives treat it explicitly.
struct LogSeries {
    Rational log_coeff; // multiplies log z
    ZSeries reg;
};

inline LogSeries p0_series(int nz, int nq) {
    ZSeries reg(0, nz, nq);
    for (int k = 2; k < nz; k += 2)
        reg.set(k, eisenstein(k, nq).scaled(Rational(1) / Rational(k)));
    return {Rational(-1), reg};
}

// The -log z term of P_0 is q-independent, so q-differentiating P_0 only
// sees the regular part, and the identity
//   2 q d/dq P_0 = P_2 - P_1^2 - 3 E_2
// becomes a window-by-window coefficient statement. Returns the residual.
inline ZSeries verify_p0_heat(int nz, int nq) {
    LogSeries p0 = p0_series(nz, nq);
    ZSeries lhs = p0.reg.qder().scaled(Rational(2));
    ZSeries p1 = pk_series(1, nz, nq);
    ZSeries rhs = pk_series(2, nz, nq) - p1 * p1 -
                  ZSeries::constant_q(eisenstein(2, nq).scaled(Rational(3)), nz);
    return lhs - rhs;
}

// Residual of q d/dq E_2 + 2 E_2 P_2(z) + P_4(z) - P_2(z)^2.
inline ZSeries verify_p4form(int nz, int nq) {
    QSeries<Rational> e2 = eisenstein(2, nq);
    ZSeries p2 = pk_series(2, nz, nq);
    return ZSeries::constant_q(e2.qder(), nz) + p2.mul_q(e2.scaled(Rational(2))) +
           pk_series(4, nz, nq) - p2 * p2;
}

// One summand of theta_1: sign * q^{q_exp} * q_z^{z_exp} with
// q_exp = (2n+1)^2/8 and z_exp = (2n+1)/2 (the overall factor i is common
// to every term and drops out of both checks below).
struct Theta1Term {
    int n;
    Rational q_exp;
    Rational z_exp;
    int sign;
};

inline Theta1Term theta1_term(int n) {
    Rational half(2 * n + 1, 2);
    return {n, half * half / 2, half, (n % 2 == 0) ? 1 : -1};
}

// 2 q d/dq theta_1 = d^2/dz^2 theta_1 holds term by term: each summand is
// an exponential in z, so the check is 2 * q_exp == z_exp^2 exactly.
inline bool theta1_heat_termwise(int n_terms) {
    for (int n = -n_terms; n <= n_terms; ++n) {
        Theta1Term t = theta1_term(n);
        if (t.q_exp * 2 != t.z_exp * t.z_exp)
            return false;
    }
    return true;
}

// theta_1(-z) = -theta_1(z): the n-th summand pairs with the (-n-1)-st,
// matching q-exponents, negated z-exponents, opposite signs.
inline bool theta1_odd_pairing(int n_terms) {
    for (int n = 0; n <= n_terms; ++n) {
        Theta1Term a = theta1_term(n);
        Theta1Term b = theta1_term(-n - 1);
        if (a.q_exp != b.q_exp || a.z_exp != -b.z_exp || a.sign != -b.sign)
            return false;
    }
    return true;
}

} // namespace virasoro
