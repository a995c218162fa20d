#pragma once

#include "tqm/hbarpoly.hpp"

#include <map>
#include <vector>

namespace tqm::weyl {

using coeff::BigInt;
using coeff::GaussianRational;
using coeff::HbarPoly;
using coeff::Rational;

enum class Var { x, p };

// Exponents of one monomial x^a p^b. Both vectors always have length rank.
struct Monomial {
    std::vector<unsigned> xe;
    std::vector<unsigned> pe;

    unsigned long total_degree() const {
        unsigned long d = 0;
        for (unsigned e : xe) d += e;
        for (unsigned e : pe) d += e;
        return d;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) = default;
};

// Canonical term order: higher total degree first, ties broken by
// lexicographically larger (xe, pe) first. Fixes iteration and serialization.
int term_order_compare(const Monomial& a, const Monomial& b);

struct TermOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        return term_order_compare(a, b) < 0;
    }
};

// Polynomial in x1..xr, p1..pr with HbarPoly coefficients. Rank is fixed per
// value and checked on every binary operation; no zero coefficients stored.
class PhasePoly {
public:
    explicit PhasePoly(unsigned rank);

    static PhasePoly constant(unsigned rank, HbarPoly c);
    static PhasePoly constant(unsigned rank, long c) { return constant(rank, HbarPoly(c)); }
    // index is 1-based, 1..rank
    static PhasePoly variable(unsigned rank, Var which, unsigned index);
    static PhasePoly from_monomial(unsigned rank, Monomial m, HbarPoly c);

    unsigned rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (zero HbarPoly when absent).
    HbarPoly constant_term() const;

    const std::map<Monomial, HbarPoly, TermOrder>& terms() const { return terms_; }

    void add_term(const Monomial& m, const HbarPoly& c);

    unsigned long total_degree() const;  // 0 for the zero polynomial
    // Largest exponent of the given variable across all terms.
    unsigned max_degree(Var which, unsigned index) const;

    PhasePoly scaled(const HbarPoly& s) const;

    friend PhasePoly operator-(const PhasePoly& f);
    friend PhasePoly operator+(const PhasePoly& f, const PhasePoly& g);
    friend PhasePoly operator-(const PhasePoly& f, const PhasePoly& g);
    friend PhasePoly operator*(const PhasePoly& f, const PhasePoly& g);
    PhasePoly& operator+=(const PhasePoly& g);
    PhasePoly& operator-=(const PhasePoly& g);

    friend bool operator==(const PhasePoly& f, const PhasePoly& g) {
        return f.rank_ == g.rank_ && f.terms_ == g.terms_;
    }

private:
    unsigned rank_;
    std::map<Monomial, HbarPoly, TermOrder> terms_;
};

// Formal partial derivative; index is 1-based. Throws on index out of range.
PhasePoly partial(const PhasePoly& f, Var which, unsigned index);

// Ordinary polynomial product (same as operator*).
PhasePoly commutative_product(const PhasePoly& f, const PhasePoly& g);

// Order-k piece of the Moyal expansion: (ih/2)^k/k! times the k-fold mixed
// derivative sum. Zero for k > min(total degrees).
PhasePoly moyal_term(const PhasePoly& f, const PhasePoly& g, unsigned k);

// f * g in the Moyal sense; terminates because the inputs are polynomials.
PhasePoly moyal_star(const PhasePoly& f, const PhasePoly& g);

// f*g - g*f
PhasePoly star_commutator(const PhasePoly& f, const PhasePoly& g);

// Substitute a numeric value for hbar in every coefficient.
PhasePoly subst_hbar(const PhasePoly& f, const GaussianRational& value);

// Total order consistent with operator== (rank, then terms in display order).
int compare(const PhasePoly& f, const PhasePoly& g);

}  // namespace tqm::weyl
