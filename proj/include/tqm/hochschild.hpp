#pragma once

#include "tqm/weyl.hpp"

#include <map>
#include <vector>

namespace tqm::hochschild {

using coeff::GaussianRational;
using coeff::HbarPoly;
using weyl::PhasePoly;

enum class ProductChoice { commutative, moyal };

// Order on factor lists used to keep chains canonical.
struct FactorOrder {
    bool operator()(const std::vector<PhasePoly>& a, const std::vector<PhasePoly>& b) const;
};

// HbarPoly-linear combination of elementary tensors f0 (x) ... (x) fm of one
// fixed degree m. Like tensors are merged; tensors with a zero factor or a
// zero scalar are dropped.
class Chain {
public:
    Chain(unsigned rank, unsigned degree);

    // Unit-scalar elementary tensor; rank and degree inferred from factors.
    static Chain elementary(std::vector<PhasePoly> factors);

    unsigned rank() const { return rank_; }
    unsigned degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }

    const std::map<std::vector<PhasePoly>, HbarPoly, FactorOrder>& terms() const { return terms_; }

    void add_term(std::vector<PhasePoly> factors, const HbarPoly& scalar);

    // Degree-0 chains are elements of the algebra; anything else throws.
    PhasePoly as_poly() const;

    Chain scaled(const HbarPoly& s) const;

    friend Chain operator+(const Chain& a, const Chain& b);
    friend Chain operator-(const Chain& a, const Chain& b);
    Chain& operator+=(const Chain& b);

    friend bool operator==(const Chain& a, const Chain& b) {
        return a.rank_ == b.rank_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

private:
    unsigned rank_;
    unsigned degree_;
    std::map<std::vector<PhasePoly>, HbarPoly, FactorOrder> terms_;
};

// Alternating sum of adjacent products, the last term wrapping around with
// sign (-1)^m. Drops the chain degree by one; degree 0 input is an error.
Chain hochschild_b(const Chain& c, ProductChoice product);

// True iff b(b(c)) vanishes identically. Degree below 2 is an error.
bool b_squared_check(const Chain& c, ProductChoice product);

}  // namespace tqm::hochschild
