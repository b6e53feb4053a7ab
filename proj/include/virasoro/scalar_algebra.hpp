#pragma once

// Formal algebra of the elliptic scalars that appear in genus-one weights:
// commuting symbols E_k and P_k(z_i - z_j) with coefficients in Q[C, alpha,
// beta, rho]. Expressions stay symbolic so that the q-derivation and the
// point derivations can be applied exactly; evaluation (numeric or as a
// q-expansion) happens only at the leaves.

#include <algorithm>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "virasoro/elliptic_numeric.hpp"
#include "virasoro/elliptic_series.hpp"
#include "virasoro/poly.hpp"
#include "virasoro/qseries.hpp"
#include "virasoro/rational.hpp"

namespace virasoro {

// One symbol: either E_k (no point labels) or P_k(z_i - z_j) with 0-based
// point labels in canonical order i < j. P_k is odd/even in its argument
// according to the parity of k, so P_k(z_j - z_i) = (-1)^k P_k(z_i - z_j);
// construction goes through p_atom_canonical to keep that sign explicit.
struct Atom {
    enum class Kind : int { Eis = 0, P = 1 };

    Kind kind;
    int k;
    int i; // -1 for Eis atoms
    int j; // -1 for Eis atoms

    auto operator<=>(const Atom&) const = default;
};

inline Atom e_atom(int k) {
    if (k < 2 || k % 2 != 0)
        throw DomainError("Eisenstein symbol needs even k >= 2");
    return Atom{Atom::Kind::Eis, k, -1, -1};
}

// Canonical form of P_k(z_i - z_j) plus the sign picked up by ordering the
// labels.
inline std::pair<Atom, int> p_atom_canonical(int k, int i, int j) {
    if (k < 1)
        throw DomainError("P symbol needs k >= 1");
    if (i < 0 || j < 0)
        throw DomainError("P symbol needs point labels >= 0");
    if (i == j)
        throw DomainError("P symbol at coincident points");
    if (i < j)
        return {Atom{Atom::Kind::P, k, i, j}, 1};
    return {Atom{Atom::Kind::P, k, j, i}, (k % 2 == 0) ? 1 : -1};
}

inline std::string atom_str(const Atom& a) {
    if (a.kind == Atom::Kind::Eis)
        return "E" + std::to_string(a.k);
    // Point labels are reported 1-based.
    return "P" + std::to_string(a.k) + "(" + std::to_string(a.i + 1) + "," +
           std::to_string(a.j + 1) + ")";
}

// q d/dq acts on P_k through a fixed rewriting rule: a rational combination
// of products of P_m sharing the same point pair. The k = 1 rule is
// q d/dq P_1 = P_3 - P_1 P_2, and d/dz P_m = -m P_{m+1} transports it up:
// rule(k+1) = -(1/k) d/dz rule(k). The table is built once, up to P_16,
// far beyond what the correlators below ever request.
inline constexpr int kPkDqLimit = 16;

inline const std::map<std::vector<int>, Rational>& pk_dq_rule(int k) {
    using Rule = std::map<std::vector<int>, Rational>;
    static const std::vector<Rule> rules = [] {
        std::vector<Rule> r(kPkDqLimit + 1);
        r[1] = {{{3}, Rational(1)}, {{1, 2}, Rational(-1)}};
        for (int m = 1; m < kPkDqLimit; ++m) {
            Rule next;
            for (const auto& [mono, c] : r[m])
                for (size_t t = 0; t < mono.size(); ++t) {
                    std::vector<int> bumped = mono;
                    bumped[t] += 1;
                    std::sort(bumped.begin(), bumped.end());
                    // -(1/m) * c * (-mono[t]) from differentiating factor t.
                    Rational add = c * Rational(mono[t]) / m;
                    auto [it, fresh] = next.emplace(std::move(bumped), add);
                    if (!fresh) {
                        it->second += add;
                        if (it->second == 0)
                            next.erase(it);
                    }
                }
            r[static_cast<size_t>(m) + 1] = std::move(next);
        }
        return r;
    }();
    if (k < 1 || k > kPkDqLimit)
        throw DomainError("q-derivation rule table covers P_1..P_16");
    return rules[static_cast<size_t>(k)];
}

class AtomEvaluator;

// Polynomial in atoms: map from a sorted atom multiset to its coefficient
// polynomial. Zero coefficients are never stored, so the zero expression is
// the empty map and operator== is structural equality.
class ScalarPoly {
  public:
    using Monomial = std::vector<Atom>;
    using Terms = std::map<Monomial, Poly>;

    ScalarPoly() = default;
    ScalarPoly(const Poly& c) {
        if (!c.is_zero())
            terms_[Monomial{}] = c;
    }
    ScalarPoly(const Rational& c) : ScalarPoly(Poly(c)) {}
    ScalarPoly(int c) : ScalarPoly(Poly(c)) {}

    static ScalarPoly eis(int k) {
        ScalarPoly r;
        r.terms_[Monomial{e_atom(k)}] = Poly(1);
        return r;
    }

    static ScalarPoly pk(int k, int i, int j) {
        auto [a, sign] = p_atom_canonical(k, i, j);
        ScalarPoly r;
        r.terms_[Monomial{a}] = Poly(Rational(sign));
        return r;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool operator==(const ScalarPoly&) const = default;

    // Constant part, rejecting anything with an atom attached.
    Poly constant_poly() const {
        Poly r;
        for (const auto& [mono, c] : terms_) {
            if (!mono.empty())
                throw DomainError("expression is not atom-free");
            r = c;
        }
        return r;
    }

    ScalarPoly& operator+=(const ScalarPoly& o) {
        for (const auto& [mono, c] : o.terms_)
            add_term(mono, c);
        return *this;
    }
    ScalarPoly& operator-=(const ScalarPoly& o) {
        for (const auto& [mono, c] : o.terms_)
            add_term(mono, -c);
        return *this;
    }
    friend ScalarPoly operator+(ScalarPoly a, const ScalarPoly& b) { return a += b; }
    friend ScalarPoly operator-(ScalarPoly a, const ScalarPoly& b) { return a -= b; }
    friend ScalarPoly operator-(const ScalarPoly& a) {
        ScalarPoly r;
        for (const auto& [mono, c] : a.terms_)
            r.terms_[mono] = -c;
        return r;
    }

    friend ScalarPoly operator*(const ScalarPoly& a, const ScalarPoly& b) {
        ScalarPoly r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m;
                m.reserve(ma.size() + mb.size());
                std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(),
                           std::back_inserter(m));
                r.add_term(m, ca * cb);
            }
        return r;
    }
    ScalarPoly& operator*=(const ScalarPoly& o) { return *this = *this * o; }

    friend ScalarPoly operator*(const ScalarPoly& a, const Poly& s) {
        ScalarPoly r;
        if (s.is_zero())
            return r;
        for (const auto& [mono, c] : a.terms_)
            r.add_term(mono, c * s);
        return r;
    }
    friend ScalarPoly operator*(const Poly& s, const ScalarPoly& a) { return a * s; }
    friend ScalarPoly operator*(const ScalarPoly& a, const Rational& s) {
        return a * Poly(s);
    }
    friend ScalarPoly operator*(const Rational& s, const ScalarPoly& a) {
        return a * Poly(s);
    }

    ScalarPoly pow(int e) const {
        if (e < 0)
            throw DomainError("negative expression power");
        ScalarPoly acc(1);
        for (int t = 0; t < e; ++t)
            acc *= *this;
        return acc;
    }

    ScalarPoly dq() const;
    ScalarPoly dz(int idx) const;

    // Renames point label i to perm[i] in every P atom, re-canonicalizing
    // the label order (with sign) afterwards.
    ScalarPoly relabel(const std::vector<int>& perm) const {
        ScalarPoly out;
        for (const auto& [mono, c] : terms_) {
            ScalarPoly t{c};
            for (const Atom& a : mono)
                t *= (a.kind == Atom::Kind::Eis)
                         ? eis(a.k)
                         : pk(a.k, perm.at(static_cast<size_t>(a.i)),
                              perm.at(static_cast<size_t>(a.j)));
            out += t;
        }
        return out;
    }

    // Every atom replaced by 1; coefficients summed. The counting image of
    // a weight, before any variable substitution.
    Poly atoms_to_one() const {
        Poly r;
        for (const auto& [mono, c] : terms_)
            r += c;
        return r;
    }

    std::complex<double> eval(AtomEvaluator& ev, std::complex<double> c_val) const;

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string out;
        for (const auto& [mono, c] : terms_) {
            std::string piece = coeff_str(c, !mono.empty());
            std::string atoms = monomial_str(mono);
            if (!atoms.empty()) {
                if (!piece.empty() && piece != "-")
                    piece += "*";
                piece += atoms;
            }
            if (out.empty()) {
                out = piece;
            } else if (piece.size() > 1 && piece[0] == '-') {
                out += " - " + piece.substr(1);
            } else {
                out += " + " + piece;
            }
        }
        return out;
    }

    static std::string monomial_str(const Monomial& mono) {
        std::string out;
        for (size_t t = 0; t < mono.size();) {
            size_t run = t;
            while (run < mono.size() && mono[run] == mono[t])
                ++run;
            if (!out.empty())
                out += "*";
            out += atom_str(mono[t]);
            if (run - t > 1)
                out += "^" + std::to_string(run - t);
            t = run;
        }
        return out;
    }

  private:
    Terms terms_;

    void add_term(const Monomial& mono, const Poly& c) {
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            if (!c.is_zero())
                terms_[mono] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }

    // Coefficient rendering for str(): "1" is dropped next to atoms, and a
    // multi-term polynomial is parenthesized so the monomial stays readable.
    static std::string coeff_str(const Poly& c, bool has_atoms) {
        std::string s = c.str();
        if (has_atoms && s == "1")
            return "";
        if (has_atoms && s == "-1")
            return "-";
        if (c.terms().size() > 1)
            return "(" + s + ")";
        return s;
    }
};

// coeff * product of atoms, rebuilt through the canonicalizing constructors
// so any atom list (canonical or not) is accepted.
inline ScalarPoly scalar_term(const ScalarPoly::Monomial& mono, const Poly& coeff) {
    ScalarPoly t{coeff};
    for (const Atom& a : mono)
        t *= (a.kind == Atom::Kind::Eis) ? ScalarPoly::eis(a.k)
                                         : ScalarPoly::pk(a.k, a.i, a.j);
    return t;
}

// Terms whose coefficient has exponent `power` in v, with v^power divided
// out. Splitting an expression by a marker variable.
inline ScalarPoly scalar_coeff_of(const ScalarPoly& s, Var v, int power) {
    ScalarPoly r;
    for (const auto& [mono, c] : s.terms()) {
        Poly part = c.coeff_of(v, power);
        if (!part.is_zero())
            r += scalar_term(mono, part);
    }
    return r;
}

// q d/dq of a single symbol.
inline ScalarPoly dq_atom(const Atom& a) {
    if (a.kind == Atom::Kind::Eis) {
        int k = a.k;
        ScalarPoly r = ScalarPoly::eis(k + 2) * (Rational(k) * Rational(k + 3) / 2);
        for (int s = 2; s <= k; s += 2)
            r -= (ScalarPoly::eis(s) * ScalarPoly::eis(k + 2 - s)) * (Rational(k) / 2);
        return r;
    }
    ScalarPoly r;
    for (const auto& [mono, c] : pk_dq_rule(a.k)) {
        ScalarPoly t{Poly(c)};
        for (int m : mono)
            t *= ScalarPoly::pk(m, a.i, a.j);
        r += t;
    }
    return r;
}

// d/dz_idx of a single symbol. P_k sits at z_i - z_j and d/dz P_k = -k P_{k+1},
// so label i picks up -k and label j picks up +k.
inline ScalarPoly dz_atom(int idx, const Atom& a) {
    if (a.kind != Atom::Kind::P)
        return ScalarPoly();
    if (a.i == idx)
        return ScalarPoly::pk(a.k + 1, a.i, a.j) * Rational(-a.k);
    if (a.j == idx)
        return ScalarPoly::pk(a.k + 1, a.i, a.j) * Rational(a.k);
    return ScalarPoly();
}

namespace detail {

template <typename AtomDeriv>
ScalarPoly leibniz(const ScalarPoly& s, AtomDeriv&& deriv) {
    ScalarPoly out;
    for (const auto& [mono, c] : s.terms())
        for (size_t t = 0; t < mono.size(); ++t) {
            ScalarPoly rest{c};
            for (size_t u = 0; u < mono.size(); ++u)
                if (u != t)
                    rest *= (mono[u].kind == Atom::Kind::Eis)
                                ? ScalarPoly::eis(mono[u].k)
                                : ScalarPoly::pk(mono[u].k, mono[u].i, mono[u].j);
            out += rest * deriv(mono[t]);
        }
    return out;
}

} // namespace detail

inline ScalarPoly ScalarPoly::dq() const {
    return detail::leibniz(*this, [](const Atom& a) { return dq_atom(a); });
}

inline ScalarPoly ScalarPoly::dz(int idx) const {
    return detail::leibniz(*this, [idx](const Atom& a) { return dz_atom(idx, a); });
}

// Numeric atom values at a fixed point configuration and nome, cached per
// atom so large expressions pay for each E_k / P_k(z_i - z_j) once.
class AtomEvaluator {
  public:
    AtomEvaluator(std::vector<Complex> z, Complex q, EvalDomain dom = {})
        : z_(std::move(z)), q_(q), dom_(dom) {}

    Complex value(const Atom& a) {
        auto it = cache_.find(a);
        if (it != cache_.end())
            return it->second;
        Complex v;
        if (a.kind == Atom::Kind::Eis)
            v = eisenstein_eval(a.k, q_, dom_.n_q);
        else
            v = pk_eval(a.k,
                        z_.at(static_cast<size_t>(a.i)) - z_.at(static_cast<size_t>(a.j)),
                        q_, dom_);
        cache_.emplace(a, v);
        return v;
    }

  private:
    std::vector<Complex> z_;
    Complex q_;
    EvalDomain dom_;
    std::map<Atom, Complex> cache_;
};

inline std::complex<double> ScalarPoly::eval(AtomEvaluator& ev,
                                             std::complex<double> c_val) const {
    std::complex<double> acc = 0;
    for (const auto& [mono, c] : terms_) {
        if (c.depends_on(Var::Alpha) || c.depends_on(Var::Beta) || c.depends_on(Var::Rho))
            throw DomainError("numeric evaluation needs coefficients in C alone");
        std::complex<double> t = c.eval(std::array<std::complex<double>, kNumVars>{
            c_val, 0.0, 0.0, 0.0});
        for (const Atom& a : mono)
            t *= ev.value(a);
        acc += t;
    }
    return acc;
}

// Exact q-expansion of a single symbol at rational points. P atoms are
// evaluated through their z-expansion truncated at nz, so their coefficients
// carry a z-truncation error that shrinks with nz; E atoms are exact.
inline QSeries<Rational> atom_qseries(const Atom& a, const std::vector<Rational>& z,
                                      int nz, int nq) {
    if (a.kind == Atom::Kind::Eis)
        return eisenstein(a.k, nq);
    return pk_series(a.k, nz, nq)
        .eval_z(z.at(static_cast<size_t>(a.i)) - z.at(static_cast<size_t>(a.j)));
}

inline QSeries<Poly> scalar_qseries(const ScalarPoly& s, const std::vector<Rational>& z,
                                    int nz, int nq) {
    QSeries<Poly> acc = QSeries<Poly>::zero(nq);
    std::map<Atom, QSeries<Rational>> cache;
    for (const auto& [mono, c] : s.terms()) {
        QSeries<Rational> prod = QSeries<Rational>::constant(Rational(1), nq);
        for (const Atom& a : mono) {
            auto it = cache.find(a);
            if (it == cache.end())
                it = cache.emplace(a, atom_qseries(a, z, nz, nq)).first;
            prod = prod * it->second;
        }
        if (prod.offset() != 0)
            throw DomainError("atom expansion acquired a fractional offset");
        QSeries<Poly> lifted = QSeries<Poly>::zero(prod.trunc());
        for (const auto& [e, v] : prod.coeffs())
            lifted.set(e, c * v);
        acc = acc + lifted;
    }
    return acc;
}

} // namespace virasoro
