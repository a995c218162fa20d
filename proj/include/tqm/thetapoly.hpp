#pragma once

#include "tqm/hbarpoly.hpp"
#include "tqm/rational.hpp"

#include <map>
#include <vector>

namespace tqm::hkr {

// Polynomial in theta_1..theta_m with coefficients in C (HbarPoly or Form).
// Exponent vectors all have length m; no zero coefficients stored.
template <class C>
class ThetaPoly {
public:
    explicit ThetaPoly(unsigned arity) : arity_(arity) {}

    static ThetaPoly constant(unsigned arity, C c) {
        ThetaPoly f(arity);
        f.add_term(std::vector<unsigned>(arity, 0), std::move(c));
        return f;
    }

    unsigned arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }

    const std::map<std::vector<unsigned>, C>& terms() const { return terms_; }

    void add_term(const std::vector<unsigned>& exponents, const C& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(exponents, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ThetaPoly scaled(const coeff::HbarPoly& s) const {
        ThetaPoly r(arity_);
        for (const auto& [e, c] : terms_) r.add_term(e, c.scaled(s));
        return r;
    }

    friend ThetaPoly operator+(const ThetaPoly& a, const ThetaPoly& b) {
        ThetaPoly r = a;
        for (const auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    ThetaPoly& operator+=(const ThetaPoly& b) {
        for (const auto& [e, c] : b.terms_) add_term(e, c);
        return *this;
    }

    // Only used when C itself is a ring (propagator coefficients).
    friend ThetaPoly operator*(const ThetaPoly& a, const ThetaPoly& b) {
        ThetaPoly r(a.arity_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                std::vector<unsigned> e = ea;
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    friend bool operator==(const ThetaPoly& a, const ThetaPoly& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    unsigned arity_;
    std::map<std::vector<unsigned>, C> terms_;
};

// Exact integral over the chamber 1 > theta_1 > ... > theta_m > 0 by iterated
// antidifferentiation: theta_k runs from 0 to theta_{k-1}, innermost first,
// with theta_0 = 1. The zero prototype supplies the result shape.
template <class C>
C simplex_integrate(const ThetaPoly<C>& poly, C zero) {
    const unsigned m = poly.arity();
    ThetaPoly<C> cur = poly;
    for (unsigned var = m; var >= 1; --var) {
        ThetaPoly<C> next(m);
        for (const auto& [e, c] : cur.terms()) {
            unsigned a = e[var - 1];
            std::vector<unsigned> e2 = e;
            e2[var - 1] = 0;
            if (var >= 2) e2[var - 2] += a + 1;
            next.add_term(e2, c.scaled(coeff::HbarPoly(coeff::make_rational(1, a + 1))));
        }
        cur = std::move(next);
    }
    C out = std::move(zero);
    for (const auto& [e, c] : cur.terms()) out += c;
    return out;
}

// Closed form for one monomial over the same chamber; the independent
// cross-check for simplex_integrate.
inline coeff::Rational simplex_monomial_integral(const std::vector<unsigned>& exponents) {
    const size_t m = exponents.size();
    coeff::Rational r(1);
    unsigned long tail = 0;
    for (size_t k = m; k >= 1; --k) {
        tail += exponents[k - 1];
        r *= coeff::make_rational(1, tail + (m - k + 1));
    }
    return r;
}

}  // namespace tqm::hkr
