#include "tqm/hkr.hpp"

#include <stdexcept>
#include <utility>

namespace tqm::hkr {

namespace {

using forms::Form;

coeff::BigInt factorial(unsigned n) {
    coeff::BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

}  // namespace

PhasePoly s1_product(const std::vector<PhasePoly>& factors) {
    if (factors.empty()) throw std::domain_error("s1 product: no factors");
    if (factors.size() == 1) return factors.front();
    const unsigned rank = factors.front().rank();
    for (const PhasePoly& f : factors)
        if (f.rank() != rank) throw std::domain_error("s1 product: rank mismatch");
    const unsigned m = static_cast<unsigned>(factors.size()) - 1;

    std::vector<Form> slots;
    slots.reserve(factors.size());
    for (const PhasePoly& f : factors) slots.push_back(Form::zero_form(f));

    Form integrated = simplex_integrate(correlator::chamber_correlator(slots), Form(rank));
    return integrated.scaled(HbarPoly(Rational(factorial(m)))).component(0);
}

HKRResult quantum_hkr(const hochschild::Chain& c) {
    const unsigned m = c.degree();
    Form out(c.rank());
    for (const auto& [factors, scalar] : c.terms()) {
        std::vector<Form> slots;
        slots.reserve(factors.size());
        slots.push_back(Form::zero_form(factors[0]));
        for (size_t k = 1; k < factors.size(); ++k)
            slots.push_back(forms::total_differential(factors[k]));
        Form value = simplex_integrate(correlator::chamber_correlator(slots), Form(c.rank()));
        out += value.scaled(scalar);
    }
    return {std::move(out), m};
}

ChainMapReport chain_map_check(const hochschild::Chain& c) {
    if (c.degree() == 0) throw std::domain_error("chain map check: degree must be at least 1");
    Form lhs = quantum_hkr(hochschild_b(c, hochschild::ProductChoice::moyal)).value;
    Form rhs = bv_delta(quantum_hkr(c).value).scaled(HbarPoly::i_hbar());
    bool equal = lhs == rhs;
    return {std::move(lhs), std::move(rhs), equal};
}

}  // namespace tqm::hkr
