#pragma once

#include "tqm/rational.hpp"

#include <stdexcept>

namespace tqm::coeff {

// Element of Q(i). Equality is componentwise; i*i = -1.
struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussianRational(Rational r) : re(std::move(r)) {}
    explicit GaussianRational(long v) : re(v) {}

    static GaussianRational zero() { return GaussianRational(); }
    static GaussianRational one() { return GaussianRational(Rational(1)); }
    static GaussianRational unit_i() { return GaussianRational(Rational(0), Rational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    // re^2 + im^2; zero iff the value is zero.
    Rational norm() const { return re * re + im * im; }

    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        if (b.is_zero()) throw std::domain_error("gaussian rational: division by zero");
        Rational n = b.norm();
        GaussianRational p = a * b.conj();
        return {p.re / n, p.im / n};
    }

    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

inline int compare(const GaussianRational& a, const GaussianRational& b) {
    if (int c = compare(a.re, b.re)) return c;
    return compare(a.im, b.im);
}

}  // namespace tqm::coeff
