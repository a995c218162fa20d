#pragma once

#include "tqm/forms.hpp"
#include "tqm/hkr.hpp"
#include "tqm/hochschild.hpp"
#include "tqm/montecarlo.hpp"
#include "tqm/weyl.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace tqm::textio {

// Syntax error with a 0-based offset into the source text. Distinct from
// std::domain_error: a ParseError means the input is malformed, a domain
// error means a well-formed expression names an impossible value.
struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

// Grammar:
//   expr     := ('-')? term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := atom ('^' nat)?
//   atom     := rational | 'i' | 'h' | 'x' nat | 'p' nat | '(' expr ')'
//   rational := ('-')? nat ('/' nat)?
// Whitespace insensitive. '/' requires an invertible constant divisor
// (nonzero, hbar-free); violating that is a domain error, not a syntax error.
// Variable indices above the rank are domain errors.
weyl::PhasePoly parse_poly(std::string_view src, unsigned rank);

// '|'-separated polynomial segments; degree = segments - 1. An empty segment
// is a syntax error.
hochschild::Chain parse_chain(std::string_view src, unsigned rank);

// A bare rational ('-'? nat ('/' nat)?), entire string.
coeff::Rational parse_rational(std::string_view src);

// Canonical text: monomials in graded-lex descending order, each split into
// one printed term per (hbar power, real/imaginary part), real first, powers
// ascending. Parses back to the same polynomial.
std::string to_text(const weyl::PhasePoly& f);
std::string to_text(const coeff::HbarPoly& c);
std::string to_text(const forms::Form& w);
std::string to_text(const hochschild::Chain& c);

nlohmann::ordered_json to_json(const coeff::Rational& q);
nlohmann::ordered_json to_json(const coeff::HbarPoly& c);
nlohmann::ordered_json to_json(const weyl::PhasePoly& f);
nlohmann::ordered_json to_json(const forms::Form& w);
nlohmann::ordered_json to_json(const hochschild::Chain& c);
nlohmann::ordered_json to_json(const hkr::HKRResult& r);
nlohmann::ordered_json to_json(const montecarlo::ComplexEstimate& est,
                               const montecarlo::MCConfig& cfg);

}  // namespace tqm::textio
