#pragma once

// JSON views of the library types for the CLI. Rationals serialize as
// exact "p/q" strings, complex numbers as [re, im] doubles. Exponent
// vectors follow the fixed variable order C, alpha, beta, rho. Key
// order inside an object is insertion order, so a fixed emission order
// makes reports byte-stable.

#include <fstream>
#include <string>

#include "json.hpp"

#include "virasoro/genus1.hpp"
#include "virasoro/poly.hpp"
#include "virasoro/qseries.hpp"
#include "virasoro/rational.hpp"
#include "virasoro/scalar_algebra.hpp"
#include "virasoro/verify.hpp"

namespace virasoro {

using Json = nlohmann::ordered_json;

inline Json complex_json(Complex v) { return Json::array({v.real(), v.imag()}); }

inline Json poly_json(const Poly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json t;
        t["exponents"] = Json::array({e[0], e[1], e[2], e[3]});
        t["coefficient"] = rational_str(c);
        terms.push_back(std::move(t));
    }
    Json j;
    j["str"] = p.str();
    j["terms"] = std::move(terms);
    return j;
}

// Mirrors the theta input format: {"offset": "p/q", "coeffs": {...},
// "truncation": N}. Coefficient keys are the integer exponent above the
// offset; values are exact strings, or rendered polynomials in C.
inline Json qseries_json(const QSeries<Rational>& s) {
    Json coeffs = Json::object();
    for (const auto& [e, v] : s.coeffs())
        coeffs[std::to_string(e)] = rational_str(v);
    Json j;
    j["offset"] = rational_str(s.offset());
    j["coeffs"] = std::move(coeffs);
    j["truncation"] = s.trunc();
    return j;
}

inline Json qseries_json(const QSeries<Poly>& s) {
    Json coeffs = Json::object();
    for (const auto& [e, v] : s.coeffs())
        coeffs[std::to_string(e)] = v.str();
    Json j;
    j["offset"] = rational_str(s.offset());
    j["coeffs"] = std::move(coeffs);
    j["truncation"] = s.trunc();
    return j;
}

inline QSeries<Rational> qseries_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("offset") || !j.contains("coeffs") ||
        !j.contains("truncation"))
        throw DomainError("series object needs offset, coeffs, truncation");
    int trunc = j.at("truncation").get<int>();
    QSeries<Rational> s(parse_rational(j.at("offset").get<std::string>()), trunc);
    for (const auto& [key, val] : j.at("coeffs").items()) {
        int e = std::stoi(key);
        s.set(e, parse_rational(val.get<std::string>()));
    }
    return s;
}

inline QSeries<Rational> read_theta_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DomainError("cannot open theta series file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw DomainError("theta series file is not valid JSON: " + std::string(e.what()));
    }
    return qseries_from_json(j);
}

// GammaExpr keyed by theta power M as a string; each coefficient is a
// list of monomials, atoms repeated to their multiplicity.
inline Json gamma_json(const GammaExpr& g) {
    Json j = Json::object();
    for (auto it = g.rbegin(); it != g.rend(); ++it) {
        Json monos = Json::array();
        for (const auto& [atoms, coeff] : it->second.terms()) {
            Json names = Json::array();
            for (const Atom& a : atoms)
                names.push_back(atom_str(a));
            Json m;
            m["atoms"] = std::move(names);
            m["coeff"] = coeff.str();
            monos.push_back(std::move(m));
        }
        j[std::to_string(it->first)] = std::move(monos);
    }
    return j;
}

inline Json check_json(const CheckResult& c) {
    Json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["residual"] = c.residual;
    if (!c.detail.empty())
        j["detail"] = c.detail;
    return j;
}

inline Json suite_json(const SuiteResult& s) {
    Json checks = Json::array();
    for (const CheckResult& c : s.checks)
        checks.push_back(check_json(c));
    Json j;
    j["suite"] = s.suite;
    j["pass"] = s.pass();
    j["checks"] = std::move(checks);
    return j;
}

// Top-level report envelope. wall_time_ms is the only field allowed to
// differ between identical runs.
inline Json report_json(const std::string& command, Json inputs, Json outputs,
                        Json residuals, bool pass, double wall_time_ms) {
    Json j;
    j["schema"] = "virasoro-report/1";
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["outputs"] = std::move(outputs);
    j["residuals"] = std::move(residuals);
    j["pass"] = pass;
    j["wall_time_ms"] = wall_time_ms;
    return j;
}

} // namespace virasoro
