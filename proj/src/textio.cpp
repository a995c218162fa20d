#include "tqm/textio.hpp"

#include <cctype>
#include <utility>
#include <vector>

namespace tqm::textio {

namespace {

using coeff::BigInt;
using coeff::GaussianRational;
using coeff::HbarPoly;
using coeff::Rational;
using weyl::Monomial;
using weyl::PhasePoly;
using weyl::Var;

PhasePoly poly_pow(PhasePoly base, unsigned e) {
    PhasePoly acc = PhasePoly::constant(base.rank(), 1);
    while (e != 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1;
        if (e != 0) base = base * base;
    }
    return acc;
}

PhasePoly poly_divide(PhasePoly lhs, const PhasePoly& rhs) {
    if (!rhs.is_constant()) throw std::domain_error("division requires a constant divisor");
    const HbarPoly c = rhs.constant_term();
    if (c.is_zero()) throw std::domain_error("division by zero");
    if (c.degree() != 0) throw std::domain_error("division by hbar is not invertible");
    return lhs.scaled(HbarPoly(GaussianRational::one() / c.coeff(0)));
}

struct Parser {
    std::string_view src;
    unsigned rank;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos); }

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool consume(char c) {
        if (peek() != c) return false;
        ++pos;
        return true;
    }
    bool digit_here() const {
        return pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]));
    }

    BigInt parse_digits() {
        skip_ws();
        const std::size_t start = pos;
        while (digit_here()) ++pos;
        if (pos == start) fail("expected a number");
        return BigInt(std::string(src.substr(start, pos - start)));
    }

    PhasePoly parse_expr() {
        const bool neg = consume('-');
        PhasePoly acc = parse_term();
        if (neg) acc = acc.scaled(HbarPoly(-1));
        for (;;) {
            if (consume('+'))
                acc += parse_term();
            else if (consume('-'))
                acc -= parse_term();
            else
                return acc;
        }
    }

    PhasePoly parse_term() {
        PhasePoly acc = parse_factor();
        for (;;) {
            if (consume('*'))
                acc = acc * parse_factor();
            else if (consume('/'))
                acc = poly_divide(std::move(acc), parse_factor());
            else
                return acc;
        }
    }

    PhasePoly parse_factor() {
        PhasePoly base = parse_atom();
        if (!consume('^')) return base;
        skip_ws();
        const std::size_t at = pos;
        const BigInt e = parse_digits();
        if (e > 100000) {
            pos = at;
            fail("exponent too large");
        }
        return poly_pow(std::move(base), e.convert_to<unsigned>());
    }

    PhasePoly parse_atom() {
        skip_ws();
        if (pos >= src.size()) fail("unexpected end of input");
        const char c = src[pos];
        if (c == '(') {
            ++pos;
            PhasePoly inner = parse_expr();
            if (!consume(')')) fail("expected ')'");
            return inner;
        }
        if (c == 'i') {
            ++pos;
            return PhasePoly::constant(rank, HbarPoly(GaussianRational::unit_i()));
        }
        if (c == 'h') {
            ++pos;
            return PhasePoly::constant(rank, HbarPoly::hbar());
        }
        if (c == 'x' || c == 'p') {
            ++pos;
            if (!digit_here()) fail("expected variable index");
            const std::size_t at = pos;
            const BigInt idx = parse_digits();
            if (idx == 0) {
                pos = at;
                fail("variable index must be positive");
            }
            if (idx > rank) throw std::domain_error("variable index exceeds rank");
            return PhasePoly::variable(rank, c == 'x' ? Var::x : Var::p,
                                       idx.convert_to<unsigned>());
        }
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            const bool neg = c == '-';
            if (neg) {
                ++pos;
                skip_ws();
                if (!digit_here()) fail("expected a number");
            }
            BigInt num = parse_digits();
            if (neg) num = -num;
            BigInt den = 1;
            // Greedy denominator; back off if '/' is followed by a non-digit,
            // letting the term level handle the division.
            const std::size_t before_slash = pos;
            if (consume('/')) {
                if (digit_here())
                    den = parse_digits();
                else
                    pos = before_slash;
            }
            return PhasePoly::constant(rank, HbarPoly(coeff::make_rational(num, den)));
        }
        fail("unexpected character");
    }
};

std::string nat_suffix(unsigned e) { return e > 1 ? "^" + std::to_string(e) : ""; }

void append_monomial_factors(std::vector<std::string>& fac, const Monomial& m) {
    for (std::size_t i = 0; i < m.xe.size(); ++i)
        if (m.xe[i] != 0) fac.push_back("x" + std::to_string(i + 1) + nat_suffix(m.xe[i]));
    for (std::size_t i = 0; i < m.pe.size(); ++i)
        if (m.pe[i] != 0) fac.push_back("p" + std::to_string(i + 1) + nat_suffix(m.pe[i]));
}

// Collects printed terms "mag * i * h^k * monomial" with signs folded into
// the separators.
struct PieceSink {
    std::string out;
    bool first = true;

    void add(const Rational& q, bool is_i, unsigned k, const Monomial* m) {
        const bool neg = q < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        const Rational mag = neg ? Rational(-q) : q;
        std::vector<std::string> fac;
        const bool bare = !is_i && k == 0 && (m == nullptr || m->total_degree() == 0);
        if (bare || mag != 1) fac.push_back(coeff::to_string(mag));
        if (is_i) fac.push_back("i");
        if (k > 0) fac.push_back("h" + nat_suffix(k));
        if (m != nullptr) append_monomial_factors(fac, *m);
        out += fac[0];
        for (std::size_t j = 1; j < fac.size(); ++j) out += "*" + fac[j];
    }

    void add_scalar(const HbarPoly& c) {
        for (const auto& [k, g] : c.coeffs()) {
            if (!g.re.is_zero()) add(g.re, false, k, nullptr);
            if (!g.im.is_zero()) add(g.im, true, k, nullptr);
        }
    }

    std::string finish() { return first ? "0" : std::move(out); }
};

std::string generator_name(unsigned bit, unsigned rank) {
    return bit < rank ? "dx" + std::to_string(bit + 1) : "dp" + std::to_string(bit - rank + 1);
}

}  // namespace

PhasePoly parse_poly(std::string_view src, unsigned rank) {
    Parser p{src, rank};
    PhasePoly out = p.parse_expr();
    p.skip_ws();
    if (p.pos != src.size()) p.fail("unexpected trailing input");
    return out;
}

hochschild::Chain parse_chain(std::string_view src, unsigned rank) {
    std::vector<PhasePoly> factors;
    std::size_t start = 0;
    for (;;) {
        const std::size_t bar = src.find('|', start);
        const std::string_view seg =
            src.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
        bool blank = true;
        for (char c : seg)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) throw ParseError("empty chain segment", start);
        try {
            factors.push_back(parse_poly(seg, rank));
        } catch (const ParseError& e) {
            throw ParseError("in chain segment: " + std::string(e.what()), start + e.position);
        }
        if (bar == std::string_view::npos) break;
        start = bar + 1;
    }
    return hochschild::Chain::elementary(std::move(factors));
}

coeff::Rational parse_rational(std::string_view src) {
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    };
    auto digits = [&]() -> BigInt {
        const std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) throw ParseError("expected a number", pos);
        return BigInt(std::string(src.substr(start, pos - start)));
    };
    skip();
    bool neg = false;
    if (pos < src.size() && src[pos] == '-') {
        neg = true;
        ++pos;
        skip();
    }
    BigInt num = digits();
    if (neg) num = -num;
    BigInt den = 1;
    skip();
    if (pos < src.size() && src[pos] == '/') {
        ++pos;
        skip();
        den = digits();
    }
    skip();
    if (pos != src.size()) throw ParseError("unexpected trailing input", pos);
    return coeff::make_rational(num, den);
}

std::string to_text(const PhasePoly& f) {
    PieceSink sink;
    for (const auto& [mono, c] : f.terms())
        for (const auto& [k, g] : c.coeffs()) {
            if (!g.re.is_zero()) sink.add(g.re, false, k, &mono);
            if (!g.im.is_zero()) sink.add(g.im, true, k, &mono);
        }
    return sink.finish();
}

std::string to_text(const HbarPoly& c) {
    PieceSink sink;
    sink.add_scalar(c);
    return sink.finish();
}

std::string to_text(const forms::Form& w) {
    if (w.is_zero()) return "0";
    std::string out;
    for (const auto& [mask, poly] : w.components()) {
        if (!out.empty()) out += "\n";
        std::string label;
        for (unsigned b = 0; b < 2 * w.rank(); ++b)
            if ((mask >> b) & 1u) {
                if (!label.empty()) label += "^";
                label += generator_name(b, w.rank());
            }
        out += "[" + (label.empty() ? "1" : label) + "] " + to_text(poly);
    }
    return out;
}

std::string to_text(const hochschild::Chain& c) {
    if (c.is_zero()) return "0";
    std::string out;
    for (const auto& [factors, scalar] : c.terms()) {
        if (!out.empty()) out += "\n";
        if (!(scalar == HbarPoly::one())) out += "(" + to_text(scalar) + ") * ";
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k > 0) out += " | ";
            out += "(" + to_text(factors[k]) + ")";
        }
    }
    return out;
}

nlohmann::ordered_json to_json(const Rational& q) {
    return {{"num", numerator(q).str()}, {"den", denominator(q).str()}};
}

nlohmann::ordered_json to_json(const HbarPoly& c) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [k, g] : c.coeffs())
        arr.push_back({{"hbar_power", k}, {"re", to_json(g.re)}, {"im", to_json(g.im)}});
    return arr;
}

nlohmann::ordered_json to_json(const PhasePoly& f) {
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [m, c] : f.terms())
        terms.push_back({{"x", m.xe}, {"p", m.pe}, {"coeff", to_json(c)}});
    return {{"kind", "poly"}, {"rank", f.rank()}, {"terms", std::move(terms)}, {"text", to_text(f)}};
}

nlohmann::ordered_json to_json(const forms::Form& w) {
    auto comps = nlohmann::ordered_json::array();
    for (const auto& [mask, poly] : w.components()) {
        auto gens = nlohmann::ordered_json::array();
        for (unsigned b = 0; b < 2 * w.rank(); ++b)
            if ((mask >> b) & 1u) gens.push_back(generator_name(b, w.rank()));
        comps.push_back({{"generators", std::move(gens)}, {"poly", to_json(poly)}});
    }
    return {{"kind", "form"}, {"rank", w.rank()}, {"components", std::move(comps)}};
}

nlohmann::ordered_json to_json(const hochschild::Chain& c) {
    auto terms = nlohmann::ordered_json::array();
    for (const auto& [factors, scalar] : c.terms()) {
        auto fac = nlohmann::ordered_json::array();
        for (const PhasePoly& f : factors) fac.push_back(to_json(f));
        terms.push_back({{"scalar", to_json(scalar)}, {"factors", std::move(fac)}});
    }
    return {{"kind", "chain"}, {"rank", c.rank()}, {"degree", c.degree()}, {"terms", std::move(terms)}};
}

nlohmann::ordered_json to_json(const hkr::HKRResult& r) {
    return {{"kind", "hkr"}, {"degree", r.chain_degree}, {"value", to_json(r.value)}};
}

nlohmann::ordered_json to_json(const montecarlo::ComplexEstimate& est,
                               const montecarlo::MCConfig& cfg) {
    return {{"mean_re", est.mean.real()},
            {"mean_im", est.mean.imag()},
            {"stderr_re", est.stderr_re},
            {"stderr_im", est.stderr_im},
            {"n", est.n},
            {"config",
             {{"modes", cfg.modes},
              {"sigma2", cfg.sigma2},
              {"hbar", cfg.hbar},
              {"samples", cfg.samples},
              {"seed", cfg.seed},
              {"rank", cfg.rank}}},
            {"generator_id", montecarlo::generator_id()}};
}

}  // namespace tqm::textio
