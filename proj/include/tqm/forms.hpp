#pragma once

#include "tqm/hochschild.hpp"
#include "tqm/weyl.hpp"

#include <cstdint>
#include <map>

namespace tqm::forms {

using coeff::GaussianRational;
using coeff::HbarPoly;
using weyl::PhasePoly;
using weyl::Var;

// Grassmann monomial as a bit set over the 2r ordered generators
// dx1 < ... < dxr < dp1 < ... < dpr: bit i-1 is dxi, bit r+i-1 is dpi.
using Mask = std::uint32_t;

constexpr unsigned kMaxFormRank = 16;  // 2r generator bits must fit the mask

Mask generator_bit(unsigned rank, Var which, unsigned index);

// +1/-1 sign for merging two disjoint sorted generator sets, counting the
// transpositions needed; 0 when the sets overlap (Grassmann square).
int wedge_sign(Mask a, Mask b);

// Element of the exterior algebra over PhasePoly. No zero components stored;
// the mask keys fix degree and serialization order.
class Form {
public:
    explicit Form(unsigned rank);

    static Form zero_form(PhasePoly f);  // degree-0 form
    static Form component_form(Mask mask, PhasePoly f);
    static Form generator(unsigned rank, Var which, unsigned index);  // dxi or dpi

    unsigned rank() const { return rank_; }
    bool is_zero() const { return components_.empty(); }

    const std::map<Mask, PhasePoly>& components() const { return components_; }
    // Component polynomial for a mask (zero polynomial when absent).
    PhasePoly component(Mask mask) const;

    void add_component(Mask mask, const PhasePoly& f);

    Form scaled(const HbarPoly& s) const;

    friend Form operator-(const Form& w);
    friend Form operator+(const Form& w, const Form& e);
    friend Form operator-(const Form& w, const Form& e);
    Form& operator+=(const Form& e);

    friend bool operator==(const Form& w, const Form& e) {
        return w.rank_ == e.rank_ && w.components_ == e.components_;
    }

private:
    unsigned rank_;
    std::map<Mask, PhasePoly> components_;
};

// Graded-commutative product.
Form wedge(const Form& w, const Form& e);

// df = sum_i (df/dxi) dxi + (df/dpi) dpi
Form total_differential(const PhasePoly& f);

// Contraction with d/dxi or d/dpi: anti-derivation removing one generator.
Form contract(const Form& w, Var direction, unsigned index);

// Delta = sum_i d/dxi iota_{dpi} - d/dpi iota_{dxi}; squares to zero.
Form bv_delta(const Form& w);

// f0 (x) ... (x) fm -> f0 df1 ^ ... ^ dfm, extended HbarPoly-linearly.
Form classical_hkr(const hochschild::Chain& c);

// Substitute a numeric value for hbar in every coefficient.
Form subst_hbar(const Form& w, const GaussianRational& value);

int compare(const Form& w, const Form& e);

}  // namespace tqm::forms
