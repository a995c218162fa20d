#include <doctest.h>

#include "tqm/hkr.hpp"

#include <random>

using namespace tqm::hkr;
namespace coeff = tqm::coeff;
using coeff::GaussianRational;
using tqm::forms::Form;
using tqm::hochschild::Chain;
using tqm::hochschild::ProductChoice;
using tqm::weyl::Monomial;
using tqm::weyl::Var;

namespace {

PhasePoly x(unsigned rank = 1, unsigned i = 1) { return PhasePoly::variable(rank, Var::x, i); }
PhasePoly p(unsigned rank = 1, unsigned i = 1) { return PhasePoly::variable(rank, Var::p, i); }

Rational rat(long n, long d = 1) { return coeff::make_rational(n, d); }

HbarPoly i_hbar_times(const Rational& r) {
    return HbarPoly::term(1, GaussianRational(Rational(0), r));
}

PhasePoly random_monomial(std::mt19937_64& rng, unsigned rank, unsigned max_degree) {
    Monomial m{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)};
    unsigned budget = std::uniform_int_distribution<unsigned>(0, max_degree)(rng);
    for (unsigned d = 0; d < budget; ++d) {
        unsigned slot = std::uniform_int_distribution<unsigned>(0, 2 * rank - 1)(rng);
        (slot < rank ? m.xe[slot] : m.pe[slot - rank])++;
    }
    long c = std::uniform_int_distribution<long>(1, 3)(rng);
    return PhasePoly::from_monomial(rank, std::move(m), HbarPoly(c));
}

}  // namespace

TEST_SUITE("hkr") {

TEST_CASE("simplex integration of frozen examples") {
    ThetaPoly<HbarPoly> one(2);
    one.add_term({0, 0}, HbarPoly::one());
    CHECK(simplex_integrate(one, HbarPoly()) == HbarPoly(rat(1, 2)));

    ThetaPoly<HbarPoly> theta2(2);
    theta2.add_term({0, 1}, HbarPoly::one());
    CHECK(simplex_integrate(theta2, HbarPoly()) == HbarPoly(rat(1, 6)));

    ThetaPoly<HbarPoly> centered(1);
    centered.add_term({1}, HbarPoly::one());
    centered.add_term({0}, HbarPoly(rat(-1, 2)));
    CHECK(simplex_integrate(centered, HbarPoly()).is_zero());
}

TEST_CASE("simplex integration matches the product closed form") {
    std::mt19937_64 rng(61);
    for (int it = 0; it < 200; ++it) {
        unsigned m = 1 + it % 4;
        std::vector<unsigned> e(m);
        for (auto& v : e) v = std::uniform_int_distribution<unsigned>(0, 5)(rng);
        ThetaPoly<HbarPoly> mono(m);
        mono.add_term(e, HbarPoly::one());
        CHECK(simplex_integrate(mono, HbarPoly()) == HbarPoly(simplex_monomial_integral(e)));
    }
}

TEST_CASE("s1 product basics") {
    CHECK(s1_product({x() * p()}) == x() * p());
    // single contraction integrates to zero over the circle
    CHECK(s1_product({x(), p()}) == x() * p());
    CHECK_THROWS_AS(s1_product({x(1), p(2, 1)}), std::domain_error);
}

TEST_CASE("s1 product of x, p, xp") {
    PhasePoly expect = x() * x() * p() * p() + (x() * p()).scaled(i_hbar_times(rat(-1, 6)));
    CHECK(s1_product({x(), p(), x() * p()}) == expect);
}

TEST_CASE("s1 product is invariant under cyclic rotation") {
    std::mt19937_64 rng(62);
    for (int it = 0; it < 30; ++it) {
        unsigned rank = 1 + it % 2;
        unsigned m = 1 + it % 2;  // degrees 1 and 2
        std::vector<PhasePoly> factors;
        for (unsigned k = 0; k <= m; ++k) factors.push_back(random_monomial(rng, rank, 2));
        PhasePoly base = s1_product(factors);
        std::vector<PhasePoly> rotated(factors.begin() + 1, factors.end());
        rotated.push_back(factors.front());
        CHECK(base == s1_product(rotated));
    }
}

TEST_CASE("quantum hkr on degree zero and contraction-free tensors") {
    PhasePoly f = x() * x() * p();
    HKRResult r0 = quantum_hkr(Chain::elementary({f}));
    CHECK(r0.chain_degree == 0);
    CHECK(r0.value == Form::zero_form(f));

    HKRResult r1 = quantum_hkr(Chain::elementary({x(), p()}));
    CHECK(r1.chain_degree == 1);
    CHECK(r1.value == Form::component_form(0b10, x()));
}

TEST_CASE("quantum hkr frozen value: x (x) p (x) xp") {
    // (ih/12 - xp/2) dx^dp
    HKRResult r = quantum_hkr(Chain::elementary({x(), p(), x() * p()}));
    Form expect = Form::component_form(
        0b11, PhasePoly::constant(1, i_hbar_times(rat(1, 12))) + (x() * p()).scaled(HbarPoly(rat(-1, 2))));
    CHECK(r.value == expect);
}

TEST_CASE("quantum hkr frozen value: x^2 (x) xp^2") {
    // (x^2p^2 - h^2/6) dx + 2x^3p dp
    HKRResult r = quantum_hkr(Chain::elementary({x() * x(), x() * p() * p()}));
    PhasePoly dx_part = x() * x() * p() * p() -
                        PhasePoly::constant(1, HbarPoly::term(2, GaussianRational(rat(1, 6))));
    PhasePoly dp_part = (x() * x() * x() * p()).scaled(HbarPoly(2));
    Form expect = Form::component_form(0b01, dx_part) + Form::component_form(0b10, dp_part);
    CHECK(r.value == expect);
}

TEST_CASE("chain map worked examples") {
    ChainMapReport r1 = chain_map_check(Chain::elementary({x(), p()}));
    CHECK(r1.equal);
    CHECK(r1.lhs == Form::zero_form(PhasePoly::constant(1, HbarPoly::i_hbar())));

    ChainMapReport r2 = chain_map_check(Chain::elementary({x(), x() * p()}));
    CHECK(r2.equal);
    CHECK(r2.lhs == Form::zero_form(x().scaled(HbarPoly::i_hbar())));

    ChainMapReport r3 = chain_map_check(Chain::elementary({x(), p(), x() * p()}));
    CHECK(r3.equal);

    CHECK_THROWS_AS(chain_map_check(Chain::elementary({x()})), std::domain_error);
}

TEST_CASE("chain map holds on random chains") {
    std::mt19937_64 rng(63);
    for (int it = 0; it < 25; ++it) {
        unsigned rank = 1 + it % 2;
        unsigned m = 1 + it % 3;
        std::vector<PhasePoly> factors;
        for (unsigned k = 0; k <= m; ++k) factors.push_back(random_monomial(rng, rank, 2));
        CHECK(chain_map_check(Chain::elementary(std::move(factors))).equal);
    }
}

TEST_CASE("classical limit carries the chamber volume") {
    std::mt19937_64 rng(64);
    coeff::BigInt mfact = 1;
    for (int it = 0; it < 30; ++it) {
        unsigned rank = 1 + it % 2;
        unsigned m = it % 4;
        mfact = 1;
        for (unsigned k = 2; k <= m; ++k) mfact *= k;
        std::vector<PhasePoly> factors;
        for (unsigned k = 0; k <= m; ++k) factors.push_back(random_monomial(rng, rank, 2));
        Chain c = Chain::elementary(factors);
        if (c.is_zero()) continue;
        Form quantum0 = subst_hbar(quantum_hkr(c).value, GaussianRational::zero());
        Form classical0 = subst_hbar(tqm::forms::classical_hkr(c), GaussianRational::zero());
        CHECK(quantum0.scaled(HbarPoly(Rational(mfact))) == classical0);
    }
}

}  // TEST_SUITE
