#include "tqm/hochschild.hpp"

#include <stdexcept>
#include <utility>

namespace tqm::hochschild {

bool FactorOrder::operator()(const std::vector<PhasePoly>& a, const std::vector<PhasePoly>& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
        if (int c = weyl::compare(a[i], b[i])) return c < 0;
    }
    return false;
}

Chain::Chain(unsigned rank, unsigned degree) : rank_(rank), degree_(degree) {
    if (rank == 0) throw std::domain_error("chain: rank must be positive");
}

Chain Chain::elementary(std::vector<PhasePoly> factors) {
    if (factors.empty()) throw std::domain_error("chain: elementary tensor needs at least one factor");
    Chain c(factors.front().rank(), static_cast<unsigned>(factors.size()) - 1);
    c.add_term(std::move(factors), HbarPoly::one());
    return c;
}

void Chain::add_term(std::vector<PhasePoly> factors, const HbarPoly& scalar) {
    if (factors.size() != degree_ + 1) throw std::domain_error("chain: factor count differs from degree + 1");
    for (const PhasePoly& f : factors) {
        if (f.rank() != rank_) throw std::domain_error("chain: factor rank mismatch");
        if (f.is_zero()) return;  // a tensor with a zero factor is zero
    }
    if (scalar.is_zero()) return;
    if (degree_ == 0) {
        // C_0 is the algebra itself: fold the scalar in and keep one polynomial.
        PhasePoly total = terms_.empty() ? factors[0].scaled(scalar)
                                         : terms_.begin()->first[0] + factors[0].scaled(scalar);
        terms_.clear();
        if (!total.is_zero()) terms_.emplace(std::vector<PhasePoly>{std::move(total)}, HbarPoly::one());
        return;
    }
    auto [it, inserted] = terms_.try_emplace(std::move(factors), scalar);
    if (!inserted) {
        it->second += scalar;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

PhasePoly Chain::as_poly() const {
    if (degree_ != 0) throw std::domain_error("chain: only degree-0 chains are polynomials");
    return terms_.empty() ? PhasePoly(rank_) : terms_.begin()->first[0];
}

Chain Chain::scaled(const HbarPoly& s) const {
    Chain r(rank_, degree_);
    if (s.is_zero()) return r;
    for (const auto& [factors, scalar] : terms_) r.add_term(factors, scalar * s);
    return r;
}

Chain operator+(const Chain& a, const Chain& b) {
    if (a.rank_ != b.rank_ || a.degree_ != b.degree_)
        throw std::domain_error("chain: rank or degree mismatch");
    Chain r = a;
    for (const auto& [factors, scalar] : b.terms_) r.add_term(factors, scalar);
    return r;
}

Chain operator-(const Chain& a, const Chain& b) {
    if (a.rank_ != b.rank_ || a.degree_ != b.degree_)
        throw std::domain_error("chain: rank or degree mismatch");
    Chain r = a;
    for (const auto& [factors, scalar] : b.terms_) r.add_term(factors, -scalar);
    return r;
}

Chain& Chain::operator+=(const Chain& b) { return *this = *this + b; }

Chain hochschild_b(const Chain& c, ProductChoice product) {
    if (c.degree() == 0) throw std::domain_error("hochschild b: degree must be at least 1");
    const unsigned m = c.degree();
    auto mul = [product](const PhasePoly& f, const PhasePoly& g) {
        return product == ProductChoice::moyal ? weyl::moyal_star(f, g) : f * g;
    };
    Chain out(c.rank(), m - 1);
    for (const auto& [factors, scalar] : c.terms()) {
        for (unsigned i = 0; i < m; ++i) {
            std::vector<PhasePoly> next;
            next.reserve(m);
            for (unsigned j = 0; j < i; ++j) next.push_back(factors[j]);
            next.push_back(mul(factors[i], factors[i + 1]));
            for (unsigned j = i + 2; j <= m; ++j) next.push_back(factors[j]);
            out.add_term(std::move(next), i % 2 ? -scalar : scalar);
        }
        std::vector<PhasePoly> wrap;
        wrap.reserve(m);
        wrap.push_back(mul(factors[m], factors[0]));
        for (unsigned j = 1; j < m; ++j) wrap.push_back(factors[j]);
        out.add_term(std::move(wrap), m % 2 ? -scalar : scalar);
    }
    return out;
}

bool b_squared_check(const Chain& c, ProductChoice product) {
    if (c.degree() < 2) throw std::domain_error("hochschild b^2: degree must be at least 2");
    return hochschild_b(hochschild_b(c, product), product).is_zero();
}

}  // namespace tqm::hochschild
