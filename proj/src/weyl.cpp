#include "tqm/weyl.hpp"

#include <stdexcept>
#include <utility>

namespace tqm::weyl {

namespace {

void require_same_rank(const PhasePoly& f, const PhasePoly& g) {
    if (f.rank() != g.rank()) throw std::domain_error("phase poly: rank mismatch");
}

void require_index(unsigned rank, unsigned index) {
    if (index < 1 || index > rank) throw std::domain_error("phase poly: variable index out of range");
}

int lex_compare(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

}  // namespace

int term_order_compare(const Monomial& a, const Monomial& b) {
    unsigned long da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db ? -1 : 1;
    if (int c = lex_compare(a.xe, b.xe)) return -c;
    if (int c = lex_compare(a.pe, b.pe)) return -c;
    return 0;
}

PhasePoly::PhasePoly(unsigned rank) : rank_(rank) {
    if (rank == 0) throw std::domain_error("phase poly: rank must be positive");
}

PhasePoly PhasePoly::constant(unsigned rank, HbarPoly c) {
    PhasePoly f(rank);
    f.add_term(Monomial{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)}, c);
    return f;
}

PhasePoly PhasePoly::variable(unsigned rank, Var which, unsigned index) {
    require_index(rank, index);
    Monomial m{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)};
    (which == Var::x ? m.xe : m.pe)[index - 1] = 1;
    return from_monomial(rank, std::move(m), HbarPoly::one());
}

PhasePoly PhasePoly::from_monomial(unsigned rank, Monomial m, HbarPoly c) {
    if (m.xe.size() != rank || m.pe.size() != rank)
        throw std::domain_error("phase poly: exponent vector length differs from rank");
    PhasePoly f(rank);
    f.add_term(m, c);
    return f;
}

bool PhasePoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.total_degree() == 0);
}

HbarPoly PhasePoly::constant_term() const {
    Monomial unit{std::vector<unsigned>(rank_, 0), std::vector<unsigned>(rank_, 0)};
    auto it = terms_.find(unit);
    return it == terms_.end() ? HbarPoly() : it->second;
}

void PhasePoly::add_term(const Monomial& m, const HbarPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

unsigned long PhasePoly::total_degree() const {
    unsigned long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
    return d;
}

unsigned PhasePoly::max_degree(Var which, unsigned index) const {
    require_index(rank_, index);
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, (which == Var::x ? m.xe : m.pe)[index - 1]);
    return d;
}

PhasePoly PhasePoly::scaled(const HbarPoly& s) const {
    PhasePoly r(rank_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.add_term(m, c * s);
    return r;
}

PhasePoly operator-(const PhasePoly& f) {
    PhasePoly r(f.rank_);
    for (const auto& [m, c] : f.terms_) r.terms_.emplace(m, -c);
    return r;
}

PhasePoly operator+(const PhasePoly& f, const PhasePoly& g) {
    require_same_rank(f, g);
    PhasePoly r = f;
    for (const auto& [m, c] : g.terms_) r.add_term(m, c);
    return r;
}

PhasePoly operator-(const PhasePoly& f, const PhasePoly& g) {
    require_same_rank(f, g);
    PhasePoly r = f;
    for (const auto& [m, c] : g.terms_) r.add_term(m, -c);
    return r;
}

PhasePoly operator*(const PhasePoly& f, const PhasePoly& g) {
    require_same_rank(f, g);
    PhasePoly r(f.rank_);
    for (const auto& [mf, cf] : f.terms_) {
        for (const auto& [mg, cg] : g.terms_) {
            Monomial m = mf;
            for (unsigned i = 0; i < r.rank_; ++i) {
                m.xe[i] += mg.xe[i];
                m.pe[i] += mg.pe[i];
            }
            r.add_term(m, cf * cg);
        }
    }
    return r;
}

PhasePoly& PhasePoly::operator+=(const PhasePoly& g) { return *this = *this + g; }
PhasePoly& PhasePoly::operator-=(const PhasePoly& g) { return *this = *this - g; }

PhasePoly partial(const PhasePoly& f, Var which, unsigned index) {
    require_index(f.rank(), index);
    PhasePoly r(f.rank());
    for (const auto& [m, c] : f.terms()) {
        unsigned e = (which == Var::x ? m.xe : m.pe)[index - 1];
        if (e == 0) continue;
        Monomial d = m;
        (which == Var::x ? d.xe : d.pe)[index - 1] = e - 1;
        r.add_term(d, c * HbarPoly(static_cast<long>(e)));
    }
    return r;
}

PhasePoly commutative_product(const PhasePoly& f, const PhasePoly& g) { return f * g; }

namespace {

// Iterated partial with respect to a multi-index over one variable family.
PhasePoly multi_partial(const PhasePoly& f, Var which, const std::vector<unsigned>& alpha) {
    PhasePoly r = f;
    for (unsigned i = 0; i < alpha.size() && !r.is_zero(); ++i)
        for (unsigned j = 0; j < alpha[i]; ++j) r = partial(r, which, i + 1);
    return r;
}

BigInt factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned k = 2; k <= n; ++k) f *= k;
    return f;
}

// i^k as a Gaussian rational.
GaussianRational unit_i_power(unsigned k) {
    switch (k % 4) {
        case 0: return GaussianRational(1);
        case 1: return GaussianRational::unit_i();
        case 2: return GaussianRational(-1);
        default: return -GaussianRational::unit_i();
    }
}

// Enumerate multi-indices v of the given componentwise bounds with |v| = want,
// invoking fn(v) for each.
template <class Fn>
void for_each_multi_index(const std::vector<unsigned>& bounds, unsigned want, Fn&& fn) {
    std::vector<unsigned> v(bounds.size(), 0);
    auto rec = [&](auto&& self, size_t pos, unsigned left) -> void {
        if (pos == v.size()) {
            if (left == 0) fn(v);
            return;
        }
        unsigned hi = std::min(bounds[pos], left);
        for (unsigned e = 0; e <= hi; ++e) {
            v[pos] = e;
            self(self, pos + 1, left - e);
        }
        v[pos] = 0;
    };
    rec(rec, 0, want);
}

}  // namespace

PhasePoly moyal_term(const PhasePoly& f, const PhasePoly& g, unsigned k) {
    require_same_rank(f, g);
    const unsigned r = f.rank();
    PhasePoly out(r);

    // alpha differentiates f in x and g in p; beta differentiates f in p and
    // g in x. Componentwise bounds keep the enumeration tight.
    std::vector<unsigned> abound(r), bbound(r);
    for (unsigned i = 0; i < r; ++i) {
        abound[i] = std::min(f.max_degree(Var::x, i + 1), g.max_degree(Var::p, i + 1));
        bbound[i] = std::min(f.max_degree(Var::p, i + 1), g.max_degree(Var::x, i + 1));
    }

    // (i/2)^k hbar^k
    GaussianRational half_i_pow = unit_i_power(k) * GaussianRational(coeff::make_rational(1, BigInt(1) << k));

    for (unsigned da = 0; da <= k; ++da) {
        for_each_multi_index(abound, da, [&](const std::vector<unsigned>& alpha) {
        for_each_multi_index(bbound, k - da, [&](const std::vector<unsigned>& beta) {
            PhasePoly df = multi_partial(multi_partial(f, Var::x, alpha), Var::p, beta);
            if (df.is_zero()) return;
            PhasePoly dg = multi_partial(multi_partial(g, Var::p, alpha), Var::x, beta);
            if (dg.is_zero()) return;
            BigInt denom = 1;
            unsigned db = 0;
            for (unsigned e : alpha) denom *= factorial(e);
            for (unsigned e : beta) {
                denom *= factorial(e);
                db += e;
            }
            GaussianRational c = half_i_pow * GaussianRational(coeff::make_rational(db % 2 ? -1 : 1, denom));
            out += (df * dg).scaled(HbarPoly::term(k, c));
        });
        });
    }
    return out;
}

PhasePoly moyal_star(const PhasePoly& f, const PhasePoly& g) {
    require_same_rank(f, g);
    PhasePoly out(f.rank());
    unsigned long kmax = std::min(f.total_degree(), g.total_degree());
    for (unsigned k = 0; k <= kmax; ++k) out += moyal_term(f, g, k);
    return out;
}

PhasePoly star_commutator(const PhasePoly& f, const PhasePoly& g) {
    return moyal_star(f, g) - moyal_star(g, f);
}

PhasePoly subst_hbar(const PhasePoly& f, const GaussianRational& value) {
    PhasePoly r(f.rank());
    for (const auto& [m, c] : f.terms()) r.add_term(m, HbarPoly(c.substitute(value)));
    return r;
}

int compare(const PhasePoly& f, const PhasePoly& g) {
    if (f.rank() != g.rank()) return f.rank() < g.rank() ? -1 : 1;
    auto ia = f.terms().begin(), ea = f.terms().end();
    auto ib = g.terms().begin(), eb = g.terms().end();
    for (; ia != ea && ib != eb; ++ia, ++ib) {
        if (int c = term_order_compare(ia->first, ib->first)) return c;
        if (int c = coeff::compare(ia->second, ib->second)) return c;
    }
    if (ia != ea) return 1;
    if (ib != eb) return -1;
    return 0;
}

}  // namespace tqm::weyl
