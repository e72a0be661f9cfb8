#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace uassoc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

inline BigInt catalan(int n) {
    if (n < 0) return 0;
    return binomial(2 * n, n) / (n + 1);
}

// Rationals print as "p/q" in lowest terms with q>0, or as a plain integer.
inline std::string rational_to_string(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational");
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational: " + text);
    }
}

}  // namespace uassoc
