#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace tqm::coeff {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Canonical form is maintained by the backend: lowest terms, denominator > 0,
// zero stored as 0/1. The backend refuses negative denominators, so route all
// two-argument construction through here.
inline Rational make_rational(BigInt num, BigInt den) {
    if (den == 0) throw std::domain_error("rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    return Rational(num, den);
}

inline Rational rational_pow(const Rational& base, unsigned exp) {
    Rational r(1);
    for (unsigned k = 0; k < exp; ++k) r *= base;
    return r;
}

// Three-way compare used for canonical ordering of composite values.
inline int compare(const Rational& a, const Rational& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

inline std::string to_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

}  // namespace tqm::coeff
