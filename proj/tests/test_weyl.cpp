#include <doctest.h>

#include "tqm/weyl.hpp"

#include <random>

using namespace tqm::weyl;
namespace coeff = tqm::coeff;

namespace {

PhasePoly x(unsigned rank = 1, unsigned i = 1) { return PhasePoly::variable(rank, Var::x, i); }
PhasePoly p(unsigned rank = 1, unsigned i = 1) { return PhasePoly::variable(rank, Var::p, i); }

HbarPoly i_hbar_over(long den) {
    return HbarPoly::term(1, GaussianRational(Rational(0), coeff::make_rational(1, den)));
}

PhasePoly random_poly(std::mt19937_64& rng, unsigned rank, unsigned max_degree) {
    std::uniform_int_distribution<unsigned> nterms(1, 3);
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<unsigned> hpow(0, 1);
    PhasePoly f(rank);
    unsigned n = nterms(rng);
    for (unsigned t = 0; t < n; ++t) {
        Monomial m{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)};
        unsigned budget = std::uniform_int_distribution<unsigned>(0, max_degree)(rng);
        for (unsigned d = 0; d < budget; ++d) {
            unsigned slot = std::uniform_int_distribution<unsigned>(0, 2 * rank - 1)(rng);
            (slot < rank ? m.xe[slot] : m.pe[slot - rank])++;
        }
        f.add_term(m, HbarPoly::term(hpow(rng), GaussianRational(coef(rng))));
    }
    return f;
}

}  // namespace

TEST_SUITE("weyl") {

TEST_CASE("partial derivatives") {
    PhasePoly f = x() * x() * p();  // x1^2 p1
    CHECK(partial(f, Var::x, 1) == (x() * p()).scaled(HbarPoly(2)));
    CHECK(partial(x(), Var::p, 1).is_zero());
    CHECK(partial(partial(x() * p(), Var::x, 1), Var::p, 1) == PhasePoly::constant(1, 1));
    CHECK_THROWS_AS(partial(f, Var::x, 2), std::domain_error);
    CHECK_THROWS_AS(partial(f, Var::p, 0), std::domain_error);
}

TEST_CASE("commutative product") {
    CHECK(commutative_product(x(), p()) == x() * p());
    std::mt19937_64 rng(21);
    PhasePoly f = random_poly(rng, 2, 3);
    CHECK(f * PhasePoly::constant(2, 1) == f);
    PhasePoly x1 = x(2), p1 = p(2);
    CHECK((x1 + p1) * (x1 - p1) == x1 * x1 - p1 * p1);
}

TEST_CASE("moyal star on conjugate variables") {
    // x * p = xp + ih/2, p * x = xp - ih/2
    PhasePoly xp = x() * p();
    CHECK(moyal_star(x(), p()) == xp + PhasePoly::constant(1, i_hbar_over(2)));
    CHECK(moyal_star(p(), x()) == xp - PhasePoly::constant(1, i_hbar_over(2)));
}

TEST_CASE("moyal star terminates with the derived quadratic example") {
    // x^2 * p^2 = x^2 p^2 + 2 ih x p - h^2 / 2
    PhasePoly x2 = x() * x(), p2 = p() * p();
    PhasePoly expect = x2 * p2 + (x() * p()).scaled(HbarPoly::i_hbar() * HbarPoly(2)) -
                       PhasePoly::constant(1, HbarPoly::term(2, GaussianRational(coeff::make_rational(1, 2))));
    CHECK(moyal_star(x2, p2) == expect);
}

TEST_CASE("moyal star rejects rank mismatch") {
    CHECK_THROWS_AS(moyal_star(x(1), p(2, 2)), std::domain_error);
    CHECK_THROWS_AS(commutative_product(x(1), x(2)), std::domain_error);
}

TEST_CASE("star commutator") {
    CHECK(star_commutator(x(), p()) == PhasePoly::constant(1, HbarPoly::i_hbar()));
    CHECK(star_commutator(x(), x()).is_zero());
    CHECK(star_commutator(x(2, 1), p(2, 2)).is_zero());
}

TEST_CASE("moyal star is associative") {
    std::mt19937_64 rng(22);
    for (int it = 0; it < 60; ++it) {
        unsigned rank = 1 + it % 2;
        PhasePoly f = random_poly(rng, rank, 3), g = random_poly(rng, rank, 3), h = random_poly(rng, rank, 3);
        CHECK(moyal_star(moyal_star(f, g), h) == moyal_star(f, moyal_star(g, h)));
    }
}

TEST_CASE("moyal star reduces to the commutative product at hbar = 0") {
    std::mt19937_64 rng(23);
    for (int it = 0; it < 80; ++it) {
        unsigned rank = 1 + it % 2;
        PhasePoly f = random_poly(rng, rank, 3), g = random_poly(rng, rank, 3);
        CHECK(subst_hbar(moyal_star(f, g), GaussianRational::zero()) ==
              subst_hbar(f * g, GaussianRational::zero()));
    }
}

TEST_CASE("star commutator is at least first order in hbar") {
    std::mt19937_64 rng(24);
    for (int it = 0; it < 80; ++it) {
        unsigned rank = 1 + it % 2;
        PhasePoly f = random_poly(rng, rank, 3), g = random_poly(rng, rank, 3);
        PhasePoly c = star_commutator(f, g);
        for (const auto& [m, s] : c.terms()) CHECK(s.coeff(0).is_zero());
    }
}

TEST_CASE("moyal series terminates at the degree bound") {
    std::mt19937_64 rng(25);
    for (int it = 0; it < 40; ++it) {
        unsigned rank = 1 + it % 2;
        PhasePoly f = random_poly(rng, rank, 3), g = random_poly(rng, rank, 3);
        unsigned kmax = static_cast<unsigned>(std::min(f.total_degree(), g.total_degree()));
        PhasePoly sum(rank);
        for (unsigned k = 0; k <= kmax; ++k) sum += moyal_term(f, g, k);
        CHECK(sum == moyal_star(f, g));
        for (unsigned k = kmax + 1; k <= kmax + 3; ++k) CHECK(moyal_term(f, g, k).is_zero());
    }
}

TEST_CASE("term order and compare are consistent") {
    PhasePoly f = x() * p() + PhasePoly::constant(1, HbarPoly::one());
    CHECK(f.terms().begin()->first.total_degree() == 2);  // highest degree first
    CHECK(compare(f, f) == 0);
    CHECK(compare(PhasePoly(1), f) != 0);
    CHECK(compare(x(), p()) != 0);
    CHECK(compare(x(), p()) == -compare(p(), x()));
}

}  // TEST_SUITE
