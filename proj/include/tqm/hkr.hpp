#pragma once

#include "tqm/correlator.hpp"
#include "tqm/forms.hpp"
#include "tqm/hochschild.hpp"
#include "tqm/thetapoly.hpp"

#include <vector>

namespace tqm::hkr {

using coeff::HbarPoly;
using coeff::Rational;
using weyl::PhasePoly;

// m! times the chamber integral of the topological correlation of the m+1
// plain observables. For a single factor this is the factor itself.
PhasePoly s1_product(const std::vector<PhasePoly>& factors);

struct HKRResult {
    forms::Form value;
    unsigned chain_degree;
};

// sigma^h: integrate <O_{f0} O_{df1} ... O_{dfm}> over the chamber, extended
// HbarPoly-linearly. No m! here, so the hbar -> 0 limit carries the chamber
// volume 1/m! relative to classical_hkr.
HKRResult quantum_hkr(const hochschild::Chain& c);

struct ChainMapReport {
    forms::Form lhs;  // sigma^h(b(c)) with the Moyal differential
    forms::Form rhs;  // ih * Delta(sigma^h(c))
    bool equal;
};

// Verifies sigma^h(b(c)) = ih Delta(sigma^h(c)) exactly. Degree 0 is an error.
ChainMapReport chain_map_check(const hochschild::Chain& c);

}  // namespace tqm::hkr
