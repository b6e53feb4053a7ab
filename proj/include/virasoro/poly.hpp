#pragma once

// Polynomials over Q in the four formal variables that ever appear:
// the central charge C, the necklace marker alpha, the cycle marker beta,
// and the cycle-opening marker rho. Fixed variable set keeps monomial
// keys as flat integer arrays; zero coefficients are never stored.

#include <array>
#include <complex>
#include <map>
#include <string>

#include "virasoro/rational.hpp"

namespace virasoro {

enum class Var : int { C = 0, Alpha = 1, Beta = 2, Rho = 3 };

constexpr int kNumVars = 4;
using ExpVec = std::array<int, kNumVars>;

inline const char* var_name(Var v) {
    switch (v) {
    case Var::C: return "C";
    case Var::Alpha: return "alpha";
    case Var::Beta: return "beta";
    case Var::Rho: return "rho";
    }
    return "?";
}

class Poly {
  public:
    using Terms = std::map<ExpVec, Rational>;

    Poly() = default;
    Poly(const Rational& c) {
        if (c != 0)
            terms_[ExpVec{}] = c;
    }
    Poly(int c) : Poly(Rational(c)) {}

    static Poly variable(Var v, int power = 1) {
        Poly p;
        if (power == 0)
            return Poly(1);
        ExpVec e{};
        e[static_cast<size_t>(v)] = power;
        p.terms_[e] = 1;
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const Poly&) const = default;

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == ExpVec{});
    }
    Rational constant_value() const {
        if (terms_.empty())
            return 0;
        if (!is_constant())
            throw DomainError("polynomial is not constant");
        return terms_.begin()->second;
    }

    Poly& operator+=(const Poly& o) {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(const Poly& a) {
        Poly r;
        for (const auto& [e, c] : a.terms_)
            r.terms_[e] = -c;
        return r;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                ExpVec e;
                for (int i = 0; i < kNumVars; ++i)
                    e[static_cast<size_t>(i)] =
                        ea[static_cast<size_t>(i)] + eb[static_cast<size_t>(i)];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator*(const Poly& a, const Rational& s) {
        Poly r;
        if (s == 0)
            return r;
        for (const auto& [e, c] : a.terms_)
            r.terms_[e] = c * s;
        return r;
    }
    friend Poly operator*(const Rational& s, const Poly& a) { return a * s; }
    Poly& operator*=(const Rational& s) { return *this = *this * s; }

    Poly pow(int e) const {
        if (e < 0)
            throw DomainError("negative polynomial power");
        Poly acc(1);
        for (int i = 0; i < e; ++i)
            acc *= *this;
        return acc;
    }

    int degree(Var v) const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e[static_cast<size_t>(v)]);
        return d;
    }

    bool depends_on(Var v) const { return degree(v) > 0; }

    // Terms whose exponent of v is exactly `power`, with v^power divided out.
    Poly coeff_of(Var v, int power) const {
        Poly r;
        for (const auto& [e, c] : terms_)
            if (e[static_cast<size_t>(v)] == power) {
                ExpVec e2 = e;
                e2[static_cast<size_t>(v)] = 0;
                r.terms_[e2] = c;
            }
        return r;
    }

    Poly substitute(Var v, const Poly& repl) const {
        Poly r;
        for (const auto& [e, c] : terms_) {
            ExpVec e2 = e;
            int p = e2[static_cast<size_t>(v)];
            e2[static_cast<size_t>(v)] = 0;
            Poly base;
            base.terms_[e2] = c;
            r += base * repl.pow(p);
        }
        return r;
    }

    Rational eval(const std::array<Rational, kNumVars>& vals) const {
        Rational acc = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < kNumVars; ++i)
                t *= pow_rational(vals[static_cast<size_t>(i)], e[static_cast<size_t>(i)]);
            acc += t;
        }
        return acc;
    }

    std::complex<double> eval(const std::array<std::complex<double>, kNumVars>& vals) const {
        std::complex<double> acc = 0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = to_double(c);
            for (int i = 0; i < kNumVars; ++i)
                for (int k = 0; k < e[static_cast<size_t>(i)]; ++k)
                    t *= vals[static_cast<size_t>(i)];
            acc += t;
        }
        return acc;
    }

    // "C^2/4 + 3*beta^2 + 6*beta", highest monomial first. Stable form,
    // used verbatim in reports.
    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            bool neg = c < 0;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            out += term_str(e, abs(c));
        }
        return out;
    }

  private:
    Terms terms_;

    void add_term(const ExpVec& e, const Rational& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0)
                terms_[e] = c;
            return;
        }
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }

    static std::string term_str(const ExpVec& e, const Rational& c) {
        std::string mono;
        for (int i = 0; i < kNumVars; ++i) {
            int p = e[static_cast<size_t>(i)];
            if (p == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += var_name(static_cast<Var>(i));
            if (p > 1)
                mono += "^" + std::to_string(p);
        }
        if (mono.empty())
            return rational_str(c);
        std::string out;
        if (numerator(c) != 1)
            out += numerator(c).str() + "*";
        out += mono;
        if (denominator(c) != 1)
            out += "/" + denominator(c).str();
        return out;
    }
};

} // namespace virasoro
