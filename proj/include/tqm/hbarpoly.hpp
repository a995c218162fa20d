#pragma once

#include "tqm/gaussian.hpp"

#include <map>

namespace tqm::coeff {

// Polynomial in the formal parameter hbar over Q(i). The scalar ring of the
// whole engine. No zero coefficients are stored; terms iterate in ascending
// hbar power.
class HbarPoly {
public:
    HbarPoly() = default;
    explicit HbarPoly(GaussianRational c) { set(0, std::move(c)); }
    explicit HbarPoly(long v) : HbarPoly(GaussianRational(v)) {}
    explicit HbarPoly(Rational v) : HbarPoly(GaussianRational(std::move(v))) {}

    static HbarPoly zero() { return HbarPoly(); }
    static HbarPoly one() { return HbarPoly(1); }
    // c * h^k
    static HbarPoly term(unsigned k, GaussianRational c) {
        HbarPoly f;
        f.set(k, std::move(c));
        return f;
    }
    static HbarPoly hbar() { return term(1, GaussianRational::one()); }
    // i * h
    static HbarPoly i_hbar() { return term(1, GaussianRational::unit_i()); }

    bool is_zero() const { return coeffs_.empty(); }
    unsigned degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    const std::map<unsigned, GaussianRational>& coeffs() const { return coeffs_; }

    GaussianRational coeff(unsigned k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? GaussianRational() : it->second;
    }

    void add_term(unsigned k, const GaussianRational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = coeffs_.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    // Evaluation homomorphism hbar -> value.
    GaussianRational substitute(const GaussianRational& value) const {
        GaussianRational acc;
        for (const auto& [k, c] : coeffs_) {
            GaussianRational p = GaussianRational::one();
            for (unsigned j = 0; j < k; ++j) p *= value;
            acc += c * p;
        }
        return acc;
    }

    friend HbarPoly operator-(const HbarPoly& a) {
        HbarPoly r;
        for (const auto& [k, c] : a.coeffs_) r.coeffs_.emplace(k, -c);
        return r;
    }
    friend HbarPoly operator+(const HbarPoly& a, const HbarPoly& b) {
        HbarPoly r = a;
        for (const auto& [k, c] : b.coeffs_) r.add_term(k, c);
        return r;
    }
    friend HbarPoly operator-(const HbarPoly& a, const HbarPoly& b) {
        HbarPoly r = a;
        for (const auto& [k, c] : b.coeffs_) r.add_term(k, -c);
        return r;
    }
    friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
        HbarPoly r;
        for (const auto& [ka, ca] : a.coeffs_)
            for (const auto& [kb, cb] : b.coeffs_) r.add_term(ka + kb, ca * cb);
        return r;
    }

    // Alias for * so generic code can scale any coefficient ring uniformly.
    HbarPoly scaled(const HbarPoly& s) const { return *this * s; }

    HbarPoly& operator+=(const HbarPoly& b) {
        for (const auto& [k, c] : b.coeffs_) add_term(k, c);
        return *this;
    }
    HbarPoly& operator-=(const HbarPoly& b) {
        for (const auto& [k, c] : b.coeffs_) add_term(k, -c);
        return *this;
    }
    HbarPoly& operator*=(const HbarPoly& b) { return *this = *this * b; }

    friend bool operator==(const HbarPoly& a, const HbarPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void set(unsigned k, GaussianRational c) {
        if (!c.is_zero()) coeffs_[k] = std::move(c);
    }

    std::map<unsigned, GaussianRational> coeffs_;
};

inline int compare(const HbarPoly& a, const HbarPoly& b) {
    auto ia = a.coeffs().begin(), ea = a.coeffs().end();
    auto ib = b.coeffs().begin(), eb = b.coeffs().end();
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (int c = compare(ia->second, ib->second)) return c;
    }
    if (ia != ea) return 1;
    if (ib != eb) return -1;
    return 0;
}

}  // namespace tqm::coeff
