#pragma once

// Exact arithmetic substrate. Everything downstream that claims "exact"
// bottoms out in these types.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>
#include <vector>

#include "virasoro/errors.hpp"

namespace virasoro {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// cpp_rational's two-argument constructor rejects negative denominators
// outright, so construction funnels through here.
inline Rational make_rational(Integer num, Integer den) {
    if (den == 0)
        throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Rational r(num, den);
    return r;
}

// Accepts "p", "p/q", optional leading '-' on either part.
inline Rational parse_rational(std::string_view s) {
    auto bad = [&] { return DomainError("cannot parse rational: '" + std::string(s) + "'"); };
    if (s.empty())
        throw bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos)
            return Rational(Integer(std::string(s)));
        Integer num{std::string(s.substr(0, slash))};
        Integer den{std::string(s.substr(slash + 1))};
        return make_rational(num, den);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

inline std::string rational_str(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1)
        s += "/" + denominator(r).str();
    return s;
}

inline double to_double(const Rational& r) {
    return r.template convert_to<double>();
}

inline Integer factorial(int n) {
    Integer f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

inline Integer binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    Integer b = 1;
    for (int i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1); // exact: product of i+1 consecutive integers
    }
    return b;
}

inline Rational pow_rational(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0)
            throw PoleError("0 raised to a negative power");
        return Rational(1) / pow_rational(base, -e);
    }
    Rational acc = 1;
    Rational b = base;
    for (int k = e; k > 0; k >>= 1) {
        if (k & 1)
            acc *= b;
        if (k > 1)
            b *= b;
    }
    return acc;
}

// B_0 = 1, B_1 = -1/2: coefficients of z/(e^z - 1).
inline Rational bernoulli(int k) {
    if (k < 0)
        throw DomainError("bernoulli of negative index");
    std::vector<Rational> B(static_cast<size_t>(k) + 1);
    B[0] = 1;
    for (int m = 1; m <= k; ++m) {
        Rational acc = 0;
        for (int j = 0; j < m; ++j)
            acc += Rational(binomial(m + 1, j)) * B[static_cast<size_t>(j)];
        B[static_cast<size_t>(m)] = -acc / Rational(m + 1);
    }
    return B[static_cast<size_t>(k)];
}

} // namespace virasoro
