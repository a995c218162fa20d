#include <doctest.h>

#include "tqm/textio.hpp"

#include <random>

using namespace tqm::textio;
namespace coeff = tqm::coeff;
using coeff::GaussianRational;
using coeff::HbarPoly;
using coeff::Rational;
using tqm::weyl::Monomial;
using tqm::weyl::PhasePoly;
using tqm::weyl::Var;

namespace {

Rational rat(long n, long d = 1) { return coeff::make_rational(n, d); }

PhasePoly random_poly(std::mt19937_64& rng, unsigned rank) {
    PhasePoly f = PhasePoly::constant(rank, 0);
    const unsigned nterms = std::uniform_int_distribution<unsigned>(0, 5)(rng);
    for (unsigned t = 0; t < nterms; ++t) {
        Monomial m{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)};
        for (unsigned i = 0; i < rank; ++i) {
            m.xe[i] = std::uniform_int_distribution<unsigned>(0, 3)(rng);
            m.pe[i] = std::uniform_int_distribution<unsigned>(0, 3)(rng);
        }
        HbarPoly c;
        for (unsigned k = 0; k <= 2; ++k) {
            if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
            const long re_n = std::uniform_int_distribution<long>(-6, 6)(rng);
            const long im_n = std::uniform_int_distribution<long>(-6, 6)(rng);
            const long den = std::uniform_int_distribution<long>(1, 5)(rng);
            c.add_term(k, GaussianRational(rat(re_n, den), rat(im_n, den)));
        }
        f += PhasePoly::from_monomial(rank, std::move(m), c);
    }
    return f;
}

}  // namespace

TEST_SUITE("textio") {

TEST_CASE("parses the star product worked example") {
    const PhasePoly expect = moyal_star(PhasePoly::variable(1, Var::x, 1),
                                        PhasePoly::variable(1, Var::p, 1));
    CHECK(parse_poly("x1*p1 + i*h/2", 1) == expect);
    CHECK(parse_poly("x1*p1 + 1/2*i*h", 1) == expect);
}

TEST_CASE("parses rationals, exponents, parentheses") {
    const PhasePoly x2 = PhasePoly::variable(2, Var::x, 2);
    CHECK(parse_poly("3/2*x2^2", 2) == (x2 * x2).scaled(HbarPoly(rat(3, 2))));
    CHECK(parse_poly("(x1 + p1)^2", 1) ==
          parse_poly("x1^2 + 2*x1*p1 + p1^2", 1));
    CHECK(parse_poly("x1^0", 1) == PhasePoly::constant(1, 1));
    CHECK(parse_poly("  - 3 ", 1) == PhasePoly::constant(1, -3));
    CHECK(parse_poly("-x1 + x1", 1).is_zero());
    CHECK(parse_poly("2 - -3", 1) == PhasePoly::constant(1, 5));
    CHECK(parse_poly("1/2^2", 1) == PhasePoly::constant(1, HbarPoly(rat(1, 4))));
    CHECK(parse_poly("i^2", 1) == PhasePoly::constant(1, -1));
}

TEST_CASE("division accepts invertible constants only") {
    CHECK(parse_poly("x1/2", 1) == PhasePoly::variable(1, Var::x, 1).scaled(HbarPoly(rat(1, 2))));
    CHECK(parse_poly("x1/i", 1) ==
          PhasePoly::variable(1, Var::x, 1).scaled(HbarPoly(GaussianRational(rat(0), rat(-1)))));
    CHECK(parse_poly("6/4", 1) == PhasePoly::constant(1, HbarPoly(rat(3, 2))));
    CHECK_THROWS_AS(parse_poly("x1/h", 1), std::domain_error);
    CHECK_THROWS_AS(parse_poly("x1/0", 1), std::domain_error);
    CHECK_THROWS_AS(parse_poly("x1/(x1)", 1), std::domain_error);
    CHECK_THROWS_AS(parse_poly("x1/(1-1)", 1), std::domain_error);
}

TEST_CASE("rank violations are domain errors, not syntax errors") {
    CHECK_THROWS_AS(parse_poly("x3", 2), std::domain_error);
    CHECK_THROWS_AS(parse_poly("p2", 1), std::domain_error);
    CHECK_NOTHROW(parse_poly("x2*p2", 2));
}

TEST_CASE("syntax errors carry positions") {
    auto position_of = [](const char* src, unsigned rank) -> std::size_t {
        try {
            parse_poly(src, rank);
        } catch (const ParseError& e) {
            return e.position;
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(position_of("", 1) == 0);
    CHECK(position_of("x", 1) == 1);
    CHECK(position_of("x0", 1) == 1);
    CHECK(position_of("1 +", 1) == 3);
    CHECK(position_of("(x1", 1) == 3);
    CHECK(position_of("x1 )", 1) == 3);
    CHECK(position_of("x1 @ p1", 1) == 3);
    CHECK(position_of("x1^999999999", 1) == 3);
    CHECK(position_of("x1 x1", 1) == 3);
}

TEST_CASE("canonical text of the worked example and signs") {
    const PhasePoly star = moyal_star(PhasePoly::variable(1, Var::x, 1),
                                      PhasePoly::variable(1, Var::p, 1));
    CHECK(to_text(star) == "x1*p1 + 1/2*i*h");
    CHECK(to_text(PhasePoly::constant(1, 0)) == "0");
    CHECK(to_text(PhasePoly::constant(1, 1)) == "1");
    CHECK(to_text(PhasePoly::constant(1, -1)) == "-1");
    CHECK(to_text(PhasePoly::variable(1, Var::x, 1).scaled(HbarPoly(-1))) == "-x1");
    CHECK(to_text(parse_poly("x1^2 - 2/3*p1 + h^2", 1)) == "x1^2 - 2/3*p1 + h^2");
    CHECK(to_text(parse_poly("1/2*h^2*x1 + 1/3*i*h^2*x1", 1)) == "1/2*h^2*x1 + 1/3*i*h^2*x1");
}

TEST_CASE("serialize-then-parse is the identity on random polynomials") {
    std::mt19937_64 rng(71);
    for (int it = 0; it < 300; ++it) {
        const unsigned rank = 1 + it % 3;
        const PhasePoly f = random_poly(rng, rank);
        const std::string text = to_text(f);
        CAPTURE(text);
        CHECK(parse_poly(text, rank) == f);
    }
}

TEST_CASE("chain parsing splits on bars") {
    using tqm::hochschild::Chain;
    const PhasePoly x = PhasePoly::variable(1, Var::x, 1);
    const PhasePoly p = PhasePoly::variable(1, Var::p, 1);
    CHECK(parse_chain("x1 | p1", 1) == Chain::elementary({x, p}));
    CHECK(parse_chain(" x1 |p1| x1*p1 ", 1) == Chain::elementary({x, p, x * p}));
    CHECK(parse_chain("x1", 1) == Chain::elementary({x}));
    CHECK_THROWS_AS(parse_chain("x1 |", 1), ParseError);
    CHECK_THROWS_AS(parse_chain("| x1", 1), ParseError);
    CHECK_THROWS_AS(parse_chain("x1 | p3", 2), std::domain_error);
    try {
        parse_chain("x1 | p1 + ", 1);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 10);
    }
}

TEST_CASE("bare rationals for command-line times") {
    CHECK(parse_rational("3/4") == rat(3, 4));
    CHECK(parse_rational("-1/4") == rat(-1, 4));
    CHECK(parse_rational(" 7 ") == rat(7));
    CHECK(parse_rational("6/4") == rat(3, 2));
    CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
    CHECK_THROWS_AS(parse_rational("x"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("json shapes: zero, pure i hbar, round-trip fields") {
    const auto zero = to_json(PhasePoly::constant(1, 0));
    CHECK(zero["kind"] == "poly");
    CHECK(zero["terms"].empty());
    CHECK(zero["text"] == "0");

    const auto ih = to_json(PhasePoly::constant(1, HbarPoly::i_hbar()));
    REQUIRE(ih["terms"].size() == 1);
    const auto& term = ih["terms"][0];
    CHECK(term["x"] == nlohmann::ordered_json::array({0}));
    CHECK(term["p"] == nlohmann::ordered_json::array({0}));
    REQUIRE(term["coeff"].size() == 1);
    CHECK(term["coeff"][0]["hbar_power"] == 1);
    CHECK(term["coeff"][0]["re"]["num"] == "0");
    CHECK(term["coeff"][0]["re"]["den"] == "1");
    CHECK(term["coeff"][0]["im"]["num"] == "1");
    CHECK(term["coeff"][0]["im"]["den"] == "1");
    CHECK(ih["text"] == "i*h");
}

TEST_CASE("json shapes: forms, chains, estimates") {
    using tqm::forms::Form;
    const PhasePoly x = PhasePoly::variable(1, Var::x, 1);
    const Form w = Form::component_form(0b11, x);
    const auto wj = to_json(w);
    CHECK(wj["kind"] == "form");
    REQUIRE(wj["components"].size() == 1);
    CHECK(wj["components"][0]["generators"] ==
          nlohmann::ordered_json::array({"dx1", "dp1"}));
    CHECK(wj["components"][0]["poly"]["text"] == "x1");

    const auto cj = to_json(parse_chain("x1 | p1", 1));
    CHECK(cj["kind"] == "chain");
    CHECK(cj["degree"] == 1);
    REQUIRE(cj["terms"].size() == 1);
    CHECK(cj["terms"][0]["factors"].size() == 2);

    tqm::montecarlo::MCConfig cfg;
    cfg.samples = 4096;
    const auto est = tqm::montecarlo::estimate_correlator({}, cfg, 1);
    const auto ej = to_json(est, cfg);
    CHECK(ej["n"] == 4096);
    CHECK(ej["config"]["modes"] == cfg.modes);
    CHECK(ej["config"]["seed"] == cfg.seed);
    CHECK(ej["generator_id"] == tqm::montecarlo::generator_id());
    CHECK(ej.contains("mean_re"));
    CHECK(ej.contains("stderr_im"));
}

TEST_CASE("text rendering of forms and chains") {
    using tqm::forms::Form;
    const PhasePoly x = PhasePoly::variable(1, Var::x, 1);
    const Form w = Form::zero_form(x) + Form::component_form(0b10, x * x);
    CHECK(to_text(w) == "[1] x1\n[dp1] x1^2");
    CHECK(to_text(Form(2)) == "0");

    const auto c = parse_chain("2*x1 | p1", 1);
    CHECK(to_text(c) == "(2*x1) | (p1)");
    // b(x (x) p) collapses to the degree-0 chain holding the commutator.
    const auto b = hochschild_b(parse_chain("x1 | p1", 1), tqm::hochschild::ProductChoice::moyal);
    CHECK(to_text(b) == "(i*h)");
}

}  // TEST_SUITE
