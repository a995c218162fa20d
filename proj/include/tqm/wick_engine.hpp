#pragma once

#include "tqm/weyl.hpp"

#include <map>
#include <vector>

namespace tqm::correlator::detail {

// One product of per-slot monomials, coefficient S. S is HbarPoly for
// numeric-time correlators and ThetaPoly<HbarPoly> for the chamber-symbolic
// ones; it must support +=, *, scaled(HbarPoly) and is_zero.
struct SlotOrder {
    bool operator()(const std::vector<weyl::Monomial>& a, const std::vector<weyl::Monomial>& b) const {
        for (size_t i = 0; i < a.size(); ++i) {
            if (int c = weyl::term_order_compare(a[i], b[i])) return c < 0;
        }
        return false;
    }
};

template <class S>
using SlotTerms = std::map<std::vector<weyl::Monomial>, S, SlotOrder>;

// Apply exp(D) with D = sum_{a != b} prop(a,b) sum_k d/dx^(a)_k d/dp^(b)_k to
// the multi-copy terms. prop(a, b) returns a pointer to the propagator
// coefficient between the x-copy at slot a and the p-copy at slot b, or null
// when that pair never contracts. Terminates because D lowers total degree.
template <class S, class PropFn>
SlotTerms<S> wick_exponential(SlotTerms<S> init, unsigned rank, unsigned slots, PropFn prop) {
    SlotTerms<S> result = init;
    SlotTerms<S> cur = std::move(init);
    for (unsigned n = 1; !cur.empty(); ++n) {
        SlotTerms<S> next;
        for (const auto& [monos, c] : cur) {
            for (unsigned a = 0; a < slots; ++a) {
                for (unsigned b = 0; b < slots; ++b) {
                    if (a == b) continue;
                    const S* pab = prop(a, b);
                    if (!pab) continue;
                    for (unsigned k = 0; k < rank; ++k) {
                        unsigned ex = monos[a].xe[k], ep = monos[b].pe[k];
                        if (ex == 0 || ep == 0) continue;
                        std::vector<weyl::Monomial> m2 = monos;
                        m2[a].xe[k] = ex - 1;
                        m2[b].pe[k] = ep - 1;
                        // chain rule factor ex*ep, and 1/n from exp(D) = prod D/n
                        S add = (c * *pab).scaled(
                            coeff::HbarPoly(coeff::make_rational(static_cast<long>(ex) * ep, n)));
                        auto [it, inserted] = next.try_emplace(std::move(m2), add);
                        if (!inserted) {
                            it->second += add;
                            if (it->second.is_zero()) next.erase(it);
                        }
                    }
                }
            }
        }
        for (const auto& [monos, c] : next) {
            auto [it, inserted] = result.try_emplace(monos, c);
            if (!inserted) {
                it->second += c;
                if (it->second.is_zero()) result.erase(it);
            }
        }
        cur = std::move(next);
    }
    return result;
}

// Multiply the slot copies back together (identify all copies).
template <class S>
std::map<weyl::Monomial, S, weyl::TermOrder> identify_copies(const SlotTerms<S>& terms, unsigned rank) {
    std::map<weyl::Monomial, S, weyl::TermOrder> out;
    for (const auto& [monos, c] : terms) {
        weyl::Monomial total{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)};
        for (const weyl::Monomial& m : monos) {
            for (unsigned k = 0; k < rank; ++k) {
                total.xe[k] += m.xe[k];
                total.pe[k] += m.pe[k];
            }
        }
        auto [it, inserted] = out.try_emplace(std::move(total), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

}  // namespace tqm::correlator::detail
