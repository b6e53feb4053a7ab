#pragma once

// Truncated q-expansions q^offset * sum_{e=0}^{trunc-1} c_e q^e with exact
// coefficients. The fractional offset carries eta's q^{1/24} and the formal
// q^{-C/24} prefactors; its denominator always divides 24. Truncation
// tracking is pessimistic: every binary operation intersects the windows of
// its operands, so a coefficient that is stored is always correct.

#include <algorithm>
#include <map>
#include <type_traits>
#include <vector>

#include "virasoro/poly.hpp"
#include "virasoro/rational.hpp"

namespace virasoro {

template <class K>
class QSeries {
  public:
    QSeries(Rational offset, int trunc) : offset_(std::move(offset)), trunc_(trunc) {
        check_offset(offset_);
        if (trunc_ < 1)
            throw DomainError("q-series truncation must be positive");
    }

    static QSeries zero(int trunc, Rational offset = 0) { return QSeries(offset, trunc); }

    static QSeries constant(const K& c, int trunc) {
        QSeries s(Rational(0), trunc);
        s.set(0, c);
        return s;
    }

    const Rational& offset() const { return offset_; }
    int trunc() const { return trunc_; }
    const std::map<int, K>& coeffs() const { return c_; }

    void set(int e, K v) {
        if (e < 0 || e >= trunc_)
            throw DomainError("q-series exponent outside truncation window");
        if (v == K{})
            c_.erase(e);
        else
            c_[e] = std::move(v);
    }

    // Exponents below the window are exactly zero; beyond it they are unknown.
    K coeff(int e) const {
        if (e >= trunc_)
            throw DomainError("q-series coefficient beyond truncation");
        auto it = c_.find(e);
        return it == c_.end() ? K{} : it->second;
    }

    bool is_zero() const { return c_.empty(); }

    QSeries truncated(int n) const {
        QSeries r(offset_, std::min(trunc_, n));
        for (const auto& [e, v] : c_)
            if (e < r.trunc_)
                r.c_[e] = v;
        return r;
    }

    // Rewrite with a smaller offset differing by an integer; leading zero
    // coefficients make up the difference.
    QSeries with_offset(const Rational& off) const {
        Rational d = offset_ - off;
        if (denominator(d) != 1)
            throw DomainError("q-offsets differ by a non-integer");
        if (d < 0)
            throw DomainError("cannot lower q-series support below its offset");
        int shift = static_cast<int>(numerator(d));
        QSeries r(off, trunc_ + shift);
        for (const auto& [e, v] : c_)
            r.c_[e + shift] = v;
        return r;
    }

    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        if (a.offset_ != b.offset_) {
            Rational off = std::min(a.offset_, b.offset_);
            return a.with_offset(off) + b.with_offset(off);
        }
        QSeries r(a.offset_, std::min(a.trunc_, b.trunc_));
        for (const auto& [e, v] : a.c_)
            if (e < r.trunc_)
                r.c_[e] = v;
        for (const auto& [e, v] : b.c_)
            if (e < r.trunc_)
                r.add_coeff(e, v);
        return r;
    }

    friend QSeries operator-(const QSeries& a) {
        QSeries r(a.offset_, a.trunc_);
        for (const auto& [e, v] : a.c_)
            r.c_[e] = K{} - v;
        return r;
    }
    friend QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        QSeries r(a.offset_ + b.offset_, std::min(a.trunc_, b.trunc_));
        for (const auto& [ea, va] : a.c_) {
            if (ea >= r.trunc_)
                break;
            for (const auto& [eb, vb] : b.c_) {
                if (ea + eb >= r.trunc_)
                    break;
                r.add_coeff(ea + eb, va * vb);
            }
        }
        return r;
    }

    friend QSeries operator*(const QSeries& a, const K& s) {
        QSeries r(a.offset_, a.trunc_);
        if (s == K{})
            return r;
        for (const auto& [e, v] : a.c_)
            r.set(e, v * s);
        return r;
    }
    friend QSeries operator*(const K& s, const QSeries& a) { return a * s; }

    QSeries scaled(const Rational& s) const {
        QSeries r(offset_, trunc_);
        if (s == 0)
            return r;
        for (const auto& [e, v] : c_)
            r.set(e, v * s);
        return r;
    }

    // q d/dq: the exponent of each term is offset + e.
    QSeries qder() const {
        QSeries r(offset_, trunc_);
        for (const auto& [e, v] : c_) {
            K w = v * (offset_ + Rational(e));
            if (!(w == K{}))
                r.c_[e] = std::move(w);
        }
        return r;
    }

    QSeries pow(int e) const {
        if (e < 0)
            throw DomainError("negative q-series power");
        QSeries acc = constant(unit(), trunc_);
        for (int i = 0; i < e; ++i)
            acc = acc * *this;
        return acc;
    }

    // Strict representational equality.
    bool operator==(const QSeries&) const = default;

  private:
    Rational offset_;
    int trunc_;
    std::map<int, K> c_;

    static void check_offset(const Rational& off) {
        if (24 % denominator(off) != 0)
            throw DomainError("q-offset denominator must divide 24");
    }

    static K unit() {
        if constexpr (std::is_same_v<K, Rational>)
            return K(1);
        else
            return K(Rational(1));
    }

    void add_coeff(int e, const K& v) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            if (!(v == K{}))
                c_[e] = v;
            return;
        }
        it->second = it->second + v;
        if (it->second == K{})
            c_.erase(it);
    }
};

// Agreement on the common window of validity. Zero series agree with zero
// series regardless of offset bookkeeping.
template <class K>
inline bool agree(const QSeries<K>& a, const QSeries<K>& b) {
    if (a.is_zero() && b.is_zero())
        return true;
    Rational d = a.offset() - b.offset();
    if (denominator(d) != 1)
        return false;
    Rational off = std::min(a.offset(), b.offset());
    QSeries<K> an = a.with_offset(off);
    QSeries<K> bn = b.with_offset(off);
    int n = std::min(an.trunc(), bn.trunc());
    for (int e = 0; e < n; ++e)
        if (!(an.coeff(e) == bn.coeff(e)))
            return false;
    return true;
}

// Multiplicative inverse of a series whose lowest stored coefficient is a
// unit. Only the Rational instantiation needs this.
inline QSeries<Rational> inverse(const QSeries<Rational>& a) {
    if (a.is_zero())
        throw DomainError("inverse of zero q-series");
    int m = a.coeffs().begin()->first;
    int n = a.trunc() - m;
    std::vector<Rational> h(static_cast<size_t>(n));
    for (const auto& [e, v] : a.coeffs())
        h[static_cast<size_t>(e - m)] = v;
    if (h[0] == 0)
        throw DomainError("q-series divisor has no invertible leading coefficient");
    std::vector<Rational> u(static_cast<size_t>(n));
    u[0] = Rational(1) / h[0];
    for (int e = 1; e < n; ++e) {
        Rational acc = 0;
        for (int j = 1; j <= e; ++j)
            acc += h[static_cast<size_t>(j)] * u[static_cast<size_t>(e - j)];
        u[static_cast<size_t>(e)] = -acc / h[0];
    }
    QSeries<Rational> r(-(a.offset() + Rational(m)), n);
    for (int e = 0; e < n; ++e)
        r.set(e, u[static_cast<size_t>(e)]);
    return r;
}

inline QSeries<Rational> operator/(const QSeries<Rational>& a, const QSeries<Rational>& b) {
    return a * inverse(b);
}

// E_k(q) = -B_k/k! + (2/(k-1)!) sum_{n>=1} sigma_{k-1}(n) q^n; identically
// zero for odd k.
inline QSeries<Rational> eisenstein(int k, int nq) {
    if (k < 2)
        throw DomainError("Eisenstein index must be at least 2");
    QSeries<Rational> s(Rational(0), nq);
    if (k % 2 != 0)
        return s;
    s.set(0, -bernoulli(k) / Rational(factorial(k)));
    std::vector<Integer> sigma(static_cast<size_t>(nq));
    for (int d = 1; d < nq; ++d) {
        Integer p = 1;
        for (int i = 0; i < k - 1; ++i)
            p *= d;
        for (int m = d; m < nq; m += d)
            sigma[static_cast<size_t>(m)] += p;
    }
    Rational scale = Rational(2) / Rational(factorial(k - 1));
    for (int n = 1; n < nq; ++n)
        s.set(n, scale * Rational(sigma[static_cast<size_t>(n)]));
    return s;
}

// q^{1/24} prod_{n>=1} (1 - q^n), truncated.
inline QSeries<Rational> eta_series(int nq) {
    std::vector<Rational> v(static_cast<size_t>(nq));
    v[0] = 1;
    for (int n = 1; n < nq; ++n)
        for (int e = nq - 1; e >= n; --e)
            v[static_cast<size_t>(e)] -= v[static_cast<size_t>(e - n)];
    QSeries<Rational> s(make_rational(1, 24), nq);
    for (int e = 0; e < nq; ++e)
        s.set(e, v[static_cast<size_t>(e)]);
    return s;
}

// q d/dq E_k - [ (k(k+3)/2) E_{k+2} - (k/2) sum_{r=2}^{k} E_r E_{k+2-r} ].
// Identically zero within truncation; returned rather than asserted so
// callers can inspect the residual.
inline QSeries<Rational> ek_recursion_residual(int k, int nq) {
    QSeries<Rational> res = eisenstein(k, nq).qder();
    res = res - eisenstein(k + 2, nq).scaled(Rational(k) * Rational(k + 3) / 2);
    for (int r = 2; r <= k; r += 2) {
        if ((k + 2 - r) % 2 != 0)
            continue;
        res = res + (eisenstein(r, nq) * eisenstein(k + 2 - r, nq)).scaled(Rational(k) / 2);
    }
    return res;
}

// Serre derivative D_k f = q d/dq f + k E_2 f.
inline QSeries<Rational> modular_derivative(int k, const QSeries<Rational>& f, int nq) {
    return f.qder() + (eisenstein(2, std::min(nq, f.trunc())) * f).scaled(Rational(k));
}

} // namespace virasoro
