#include "tqm/correlator.hpp"

#include "tqm/wick_engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace tqm::correlator {

namespace {

using coeff::BigInt;
using coeff::make_rational;
using detail::SlotTerms;
using forms::Form;
using forms::Mask;
using hkr::ThetaPoly;
using weyl::Monomial;

Rational reduce_mod_one(const Rational& t) {
    BigInt num = numerator(t), den = denominator(t);
    BigInt r = num % den;
    if (r < 0) r += den;
    return make_rational(r, den);
}

}  // namespace

TimePoint::TimePoint(const Rational& t) : value_(reduce_mod_one(t)) {}

Rational saw(const Rational& u) {
    Rational f = reduce_mod_one(u);
    if (f == 0) return Rational(0);
    return make_rational(1, 2) - f;
}

HbarPoly propagator(const TimePoint& t1, const TimePoint& t2) {
    Rational s = saw(t1.value() - t2.value());
    return HbarPoly::term(1, GaussianRational(Rational(0), s));
}

namespace {

// Cartesian product over the chosen per-slot Form components: Grassmann data
// wedges out front, polynomial parts feed the Wick engine.
struct ComponentChoice {
    int sign;
    Mask mask;
    std::vector<const PhasePoly*> polys;
};

template <class Fn>
void for_each_component_choice(const std::vector<Form>& factors, Fn&& fn) {
    std::vector<const std::pair<const Mask, PhasePoly>*> picks(factors.size());
    auto rec = [&](auto&& self, size_t slot, int sign, Mask mask) -> void {
        if (slot == factors.size()) {
            ComponentChoice choice;
            choice.sign = sign;
            choice.mask = mask;
            for (const auto* pick : picks) choice.polys.push_back(&pick->second);
            fn(choice);
            return;
        }
        for (const auto& entry : factors[slot].components()) {
            int s = forms::wedge_sign(mask, entry.first);
            if (s == 0) continue;
            picks[slot] = &entry;
            self(self, slot + 1, sign * s, mask | entry.first);
        }
    };
    rec(rec, 0, 1, 0);
}

// Expand the per-slot polynomials into slot-labeled monomial terms with
// coefficients in S; embed lifts an HbarPoly into S.
template <class S, class Embed>
SlotTerms<S> initial_terms(const std::vector<const PhasePoly*>& polys, Embed embed) {
    SlotTerms<S> terms;
    std::vector<Monomial> monos;
    auto rec = [&](auto&& self, size_t slot, const HbarPoly& c) -> void {
        if (slot == polys.size()) {
            S v = embed(c);
            auto [it, inserted] = terms.try_emplace(monos, v);
            if (!inserted) it->second += v;
            return;
        }
        for (const auto& [m, hc] : polys[slot]->terms()) {
            monos.push_back(m);
            self(self, slot + 1, c * hc);
            monos.pop_back();
        }
    };
    rec(rec, 0, HbarPoly::one());
    return terms;
}

unsigned common_rank(const std::vector<Form>& factors) {
    if (factors.empty()) throw std::domain_error("correlator: no factors");
    unsigned rank = factors.front().rank();
    for (const Form& f : factors)
        if (f.rank() != rank) throw std::domain_error("correlator: rank mismatch");
    return rank;
}

}  // namespace

forms::Form wick_correlator(const std::vector<Vertex>& vertices) {
    std::vector<Form> factors;
    factors.reserve(vertices.size());
    for (const Vertex& v : vertices) factors.push_back(v.observable);
    const unsigned rank = common_rank(factors);
    const size_t n = vertices.size();

    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            if (vertices[a].time == vertices[b].time)
                throw std::domain_error("correlator: coincident insertion times");

    // Propagator matrix; the diagonal is excluded by the engine.
    std::vector<std::vector<HbarPoly>> prop(n, std::vector<HbarPoly>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (a != b) prop[a][b] = propagator(vertices[a].time, vertices[b].time);

    Form out(rank);
    for_each_component_choice(factors, [&](const ComponentChoice& choice) {
        SlotTerms<HbarPoly> init =
            initial_terms<HbarPoly>(choice.polys, [](const HbarPoly& c) { return c; });
        auto expanded = detail::wick_exponential(
            std::move(init), rank, static_cast<unsigned>(n),
            [&](unsigned a, unsigned b) { return prop[a][b].is_zero() ? nullptr : &prop[a][b]; });
        auto collapsed = detail::identify_copies(expanded, rank);
        PhasePoly p(rank);
        for (const auto& [m, c] : collapsed) p.add_term(m, choice.sign < 0 ? -c : c);
        out.add_component(choice.mask, p);
    });
    return out;
}

PhasePoly wick_correlator(const std::vector<std::pair<PhasePoly, TimePoint>>& vertices) {
    std::vector<Vertex> vs;
    vs.reserve(vertices.size());
    for (const auto& [f, t] : vertices) vs.push_back({t, Form::zero_form(f)});
    return wick_correlator(vs).component(0);
}

HbarPoly wick_pairings_oracle(const std::vector<Insertion>& xs, const std::vector<Insertion>& ps) {
    std::map<unsigned, std::vector<TimePoint>> by_index_x, by_index_p;
    for (const Insertion& i : xs) by_index_x[i.index].push_back(i.time);
    for (const Insertion& i : ps) by_index_p[i.index].push_back(i.time);
    if (by_index_x.size() != by_index_p.size()) return HbarPoly();
    HbarPoly total = HbarPoly::one();
    for (const auto& [index, times_x] : by_index_x) {
        auto it = by_index_p.find(index);
        if (it == by_index_p.end() || it->second.size() != times_x.size()) return HbarPoly();
        const auto& times_p = it->second;
        const size_t u = times_x.size();
        std::vector<size_t> perm(u);
        std::iota(perm.begin(), perm.end(), 0);
        HbarPoly sum;
        do {
            HbarPoly prod = HbarPoly::one();
            for (size_t i = 0; i < u && !prod.is_zero(); ++i)
                prod *= propagator(times_x[i], times_p[perm[i]]);
            sum += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total *= sum;
        if (total.is_zero()) return total;
    }
    return total;
}

namespace {

// ih(1/2 - theta_a + theta_b) for a < b, ih(-1/2 - theta_a + theta_b) for
// a > b; slot 0 sits at theta_0 = 1 so its symbol is substituted away.
ThetaPoly<HbarPoly> chamber_prop(unsigned a, unsigned b, unsigned m) {
    ThetaPoly<HbarPoly> r(m);
    Rational c = make_rational(a < b ? 1 : -1, 2);
    if (a == 0)
        c -= 1;
    else {
        std::vector<unsigned> e(m, 0);
        e[a - 1] = 1;
        r.add_term(e, -HbarPoly::i_hbar());
    }
    if (b == 0)
        c += 1;
    else {
        std::vector<unsigned> e(m, 0);
        e[b - 1] = 1;
        r.add_term(e, HbarPoly::i_hbar());
    }
    r.add_term(std::vector<unsigned>(m, 0), HbarPoly::term(1, GaussianRational(Rational(0), c)));
    return r;
}

}  // namespace

hkr::ThetaPoly<forms::Form> chamber_correlator(const std::vector<forms::Form>& factors) {
    const unsigned rank = common_rank(factors);
    const unsigned slots = static_cast<unsigned>(factors.size());
    const unsigned m = slots - 1;

    std::vector<std::vector<ThetaPoly<HbarPoly>>> prop(
        slots, std::vector<ThetaPoly<HbarPoly>>(slots, ThetaPoly<HbarPoly>(m)));
    for (unsigned a = 0; a < slots; ++a)
        for (unsigned b = 0; b < slots; ++b)
            if (a != b) prop[a][b] = chamber_prop(a, b, m);

    ThetaPoly<Form> out(m);
    for_each_component_choice(factors, [&](const ComponentChoice& choice) {
        SlotTerms<ThetaPoly<HbarPoly>> init = initial_terms<ThetaPoly<HbarPoly>>(
            choice.polys,
            [m](const HbarPoly& c) { return ThetaPoly<HbarPoly>::constant(m, c); });
        auto expanded = detail::wick_exponential(
            std::move(init), rank, slots, [&](unsigned a, unsigned b) { return &prop[a][b]; });
        auto collapsed = detail::identify_copies(expanded, rank);
        for (const auto& [mono, th] : collapsed) {
            for (const auto& [e, hc] : th.terms()) {
                PhasePoly p = PhasePoly::from_monomial(rank, mono, choice.sign < 0 ? -hc : hc);
                out.add_term(e, Form::component_form(choice.mask, p));
            }
        }
    });
    return out;
}

}  // namespace tqm::correlator
