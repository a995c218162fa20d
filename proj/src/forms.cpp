#include "tqm/forms.hpp"

#include <bit>
#include <stdexcept>
#include <utility>

namespace tqm::forms {

namespace {

void require_same_rank(const Form& w, const Form& e) {
    if (w.rank() != e.rank()) throw std::domain_error("form: rank mismatch");
}

}  // namespace

Mask generator_bit(unsigned rank, Var which, unsigned index) {
    if (index < 1 || index > rank) throw std::domain_error("form: generator index out of range");
    unsigned pos = (which == Var::x ? 0 : rank) + index - 1;
    return Mask(1) << pos;
}

int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    unsigned inversions = 0;
    for (Mask rest = b; rest;) {
        unsigned g = std::countr_zero(rest);
        rest &= rest - 1;
        inversions += std::popcount(a >> (g + 1));
    }
    return inversions % 2 ? -1 : 1;
}

Form::Form(unsigned rank) : rank_(rank) {
    if (rank == 0) throw std::domain_error("form: rank must be positive");
    if (rank > kMaxFormRank) throw std::domain_error("form: rank exceeds the generator mask limit");
}

Form Form::zero_form(PhasePoly f) {
    Form w(f.rank());
    w.add_component(0, f);
    return w;
}

Form Form::component_form(Mask mask, PhasePoly f) {
    Form w(f.rank());
    w.add_component(mask, f);
    return w;
}

Form Form::generator(unsigned rank, Var which, unsigned index) {
    Form w(rank);
    w.add_component(generator_bit(rank, which, index), PhasePoly::constant(rank, 1));
    return w;
}

PhasePoly Form::component(Mask mask) const {
    auto it = components_.find(mask);
    return it == components_.end() ? PhasePoly(rank_) : it->second;
}

void Form::add_component(Mask mask, const PhasePoly& f) {
    if (f.rank() != rank_) throw std::domain_error("form: component rank mismatch");
    if (mask >> (2 * rank_)) throw std::domain_error("form: generator outside rank");
    if (f.is_zero()) return;
    auto [it, inserted] = components_.try_emplace(mask, f);
    if (!inserted) {
        it->second += f;
        if (it->second.is_zero()) components_.erase(it);
    }
}

Form Form::scaled(const HbarPoly& s) const {
    Form r(rank_);
    if (s.is_zero()) return r;
    for (const auto& [mask, f] : components_) r.add_component(mask, f.scaled(s));
    return r;
}

Form operator-(const Form& w) {
    Form r(w.rank_);
    for (const auto& [mask, f] : w.components_) r.components_.emplace(mask, -f);
    return r;
}

Form operator+(const Form& w, const Form& e) {
    require_same_rank(w, e);
    Form r = w;
    for (const auto& [mask, f] : e.components_) r.add_component(mask, f);
    return r;
}

Form operator-(const Form& w, const Form& e) {
    require_same_rank(w, e);
    Form r = w;
    for (const auto& [mask, f] : e.components_) r.add_component(mask, -f);
    return r;
}

Form& Form::operator+=(const Form& e) { return *this = *this + e; }

Form wedge(const Form& w, const Form& e) {
    require_same_rank(w, e);
    Form r(w.rank());
    for (const auto& [ma, fa] : w.components()) {
        for (const auto& [mb, fb] : e.components()) {
            int sign = wedge_sign(ma, mb);
            if (sign == 0) continue;
            PhasePoly f = fa * fb;
            if (sign < 0) f = -f;
            r.add_component(ma | mb, f);
        }
    }
    return r;
}

Form total_differential(const PhasePoly& f) {
    Form r(f.rank());
    for (unsigned i = 1; i <= f.rank(); ++i) {
        r.add_component(generator_bit(f.rank(), Var::x, i), partial(f, Var::x, i));
        r.add_component(generator_bit(f.rank(), Var::p, i), partial(f, Var::p, i));
    }
    return r;
}

Form contract(const Form& w, Var direction, unsigned index) {
    Mask bit = generator_bit(w.rank(), direction, index);
    Form r(w.rank());
    for (const auto& [mask, f] : w.components()) {
        if (!(mask & bit)) continue;
        unsigned preceding = std::popcount(mask & (bit - 1));
        r.add_component(mask & ~bit, preceding % 2 ? -f : f);
    }
    return r;
}

Form bv_delta(const Form& w) {
    Form r(w.rank());
    for (unsigned i = 1; i <= w.rank(); ++i) {
        Form cp = contract(w, Var::p, i);
        for (const auto& [mask, f] : cp.components()) r.add_component(mask, partial(f, Var::x, i));
        Form cx = contract(w, Var::x, i);
        for (const auto& [mask, f] : cx.components()) r.add_component(mask, -partial(f, Var::p, i));
    }
    return r;
}

Form classical_hkr(const hochschild::Chain& c) {
    Form out(c.rank());
    for (const auto& [factors, scalar] : c.terms()) {
        Form w = Form::zero_form(factors[0]);
        for (size_t k = 1; k < factors.size(); ++k) w = wedge(w, total_differential(factors[k]));
        out += w.scaled(scalar);
    }
    return out;
}

Form subst_hbar(const Form& w, const GaussianRational& value) {
    Form r(w.rank());
    for (const auto& [mask, f] : w.components()) r.add_component(mask, weyl::subst_hbar(f, value));
    return r;
}

int compare(const Form& w, const Form& e) {
    if (w.rank() != e.rank()) return w.rank() < e.rank() ? -1 : 1;
    auto ia = w.components().begin(), ea = w.components().end();
    auto ib = e.components().begin(), eb = e.components().end();
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first ? -1 : 1;
        if (int c = weyl::compare(ia->second, ib->second)) return c;
    }
    if (ia != ea) return 1;
    if (ib != eb) return -1;
    return 0;
}

}  // namespace tqm::forms
