#include "tqm/checks.hpp"

#include "tqm/correlator.hpp"
#include "tqm/hkr.hpp"
#include "tqm/montecarlo.hpp"
#include "tqm/textio.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

namespace tqm::checks {

namespace {

using coeff::BigInt;
using coeff::GaussianRational;
using coeff::HbarPoly;
using coeff::Rational;
using correlator::Insertion;
using correlator::TimePoint;
using forms::Form;
using hochschild::Chain;
using hochschild::ProductChoice;
using weyl::Monomial;
using weyl::PhasePoly;
using weyl::Var;

constexpr unsigned kMaxMessages = 5;

// Wraps per-case bodies with timing, failure counting and message capture.
struct Runner {
    CheckResult result;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    explicit Runner(std::string name) { result.name = std::move(name); }

    void run_case(const std::function<bool()>& body, const std::function<std::string()>& describe) {
        ++result.cases;
        bool ok = false;
        std::string note;
        try {
            ok = body();
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        if (ok) return;
        ++result.failures;
        if (result.messages.size() < kMaxMessages) {
            std::string msg = describe();
            if (!note.empty()) msg += " [" + note + "]";
            result.messages.push_back(std::move(msg));
        }
    }

    CheckResult finish() {
        result.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return std::move(result);
    }
};

Monomial random_exponents(Rng& rng, unsigned rank, unsigned max_degree) {
    Monomial m{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)};
    const unsigned budget = rng.below(max_degree + 1);
    for (unsigned d = 0; d < budget; ++d) {
        const unsigned slot = rng.below(2 * rank);
        (slot < rank ? m.xe[slot] : m.pe[slot - rank])++;
    }
    return m;
}

std::vector<Rational> distinct_times(Rng& rng, unsigned count) {
    std::vector<long> ticks(97);
    for (long k = 0; k < 97; ++k) ticks[k] = k;
    for (unsigned k = 0; k < count; ++k)
        std::swap(ticks[k], ticks[k + rng.below(97 - k)]);
    std::vector<Rational> out;
    out.reserve(count);
    for (unsigned k = 0; k < count; ++k) out.push_back(coeff::make_rational(ticks[k], 97));
    return out;
}

// Independent evaluation of a monomial correlator: binomially expand each
// vertex into contracted insertions and a spectator remainder, and let the
// pairing oracle price the contracted part.
PhasePoly correlator_via_pairings(const std::vector<std::pair<PhasePoly, TimePoint>>& vertices) {
    const unsigned rank = vertices.front().first.rank();
    PhasePoly out(rank);

    struct Slot {
        Monomial mono;
        HbarPoly coeff;
        TimePoint time;
    };
    std::vector<Slot> slots;
    for (const auto& [f, t] : vertices)
        slots.push_back({f.terms().begin()->first, f.terms().begin()->second, t});

    std::vector<Monomial> pick(slots.size());
    auto binom = [](unsigned n, unsigned k) {
        BigInt b = 1;
        for (unsigned j = 0; j < k; ++j) b = b * (n - j) / (j + 1);
        return b;
    };
    auto rec = [&](auto&& self, std::size_t s) -> void {
        if (s == slots.size()) {
            HbarPoly weight = HbarPoly::one();
            Monomial rest{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)};
            std::vector<Insertion> xs, ps;
            for (std::size_t a = 0; a < slots.size(); ++a) {
                weight *= slots[a].coeff;
                for (unsigned k = 0; k < rank; ++k) {
                    const unsigned cx = pick[a].xe[k], cp = pick[a].pe[k];
                    rest.xe[k] += slots[a].mono.xe[k] - cx;
                    rest.pe[k] += slots[a].mono.pe[k] - cp;
                    weight = weight * HbarPoly(Rational(binom(slots[a].mono.xe[k], cx) *
                                                        binom(slots[a].mono.pe[k], cp)));
                    for (unsigned c = 0; c < cx; ++c) xs.push_back({k + 1, slots[a].time});
                    for (unsigned c = 0; c < cp; ++c) ps.push_back({k + 1, slots[a].time});
                }
            }
            out += PhasePoly::from_monomial(rank, rest,
                                            weight * wick_pairings_oracle(xs, ps));
            return;
        }
        std::vector<unsigned> cx(rank), cp(rank);
        auto loop = [&](auto&& inner, unsigned pos) -> void {
            if (pos == 2 * rank) {
                pick[s] = Monomial{cx, cp};
                self(self, s + 1);
                return;
            }
            const unsigned lim =
                pos < rank ? slots[s].mono.xe[pos] : slots[s].mono.pe[pos - rank];
            for (unsigned c = 0; c <= lim; ++c) {
                (pos < rank ? cx[pos] : cp[pos - rank]) = c;
                inner(inner, pos + 1);
            }
        };
        loop(loop, 0);
    };
    rec(rec, 0);
    return out;
}

}  // namespace

PhasePoly random_monomial(Rng& rng, unsigned rank, unsigned max_degree) {
    return PhasePoly::from_monomial(rank, random_exponents(rng, rank, max_degree),
                                    HbarPoly(static_cast<long>(1 + rng.below(3))));
}

PhasePoly random_poly(Rng& rng, unsigned rank, unsigned max_degree, unsigned max_terms) {
    PhasePoly f(rank);
    const unsigned nterms = rng.below(max_terms + 1);
    for (unsigned t = 0; t < nterms; ++t) {
        HbarPoly c;
        const unsigned k = rng.below(3);
        const long den = 1 + rng.below(4);
        c.add_term(k, GaussianRational(coeff::make_rational(rng.range(-5, 5), den),
                                       coeff::make_rational(rng.range(-5, 5), den)));
        if (c.is_zero()) continue;
        f += PhasePoly::from_monomial(rank, random_exponents(rng, rank, max_degree), c);
    }
    return f;
}

Chain random_chain(Rng& rng, unsigned rank, unsigned degree, unsigned max_factor_degree) {
    std::vector<PhasePoly> factors;
    factors.reserve(degree + 1);
    for (unsigned k = 0; k <= degree; ++k)
        factors.push_back(random_monomial(rng, rank, max_factor_degree));
    return Chain::elementary(std::move(factors));
}

Form random_form(Rng& rng, unsigned rank, unsigned max_degree) {
    Form w(rank);
    const unsigned parts = 1 + rng.below(3);
    for (unsigned j = 0; j < parts; ++j) {
        const forms::Mask mask = static_cast<forms::Mask>(rng.below(1u << (2 * rank)));
        const PhasePoly f = random_poly(rng, rank, max_degree, 2);
        if (!f.is_zero()) w += Form::component_form(mask, f);
    }
    return w;
}

CheckResult moyal_associativity(std::uint64_t seed, unsigned cases) {
    Runner r("moyal-associativity");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned rank = 1 + rng.below(2);
        const PhasePoly f = random_poly(rng, rank, 3, 3);
        const PhasePoly g = random_poly(rng, rank, 3, 3);
        const PhasePoly h = random_poly(rng, rank, 3, 3);
        r.run_case(
            [&] { return moyal_star(moyal_star(f, g), h) == moyal_star(f, moyal_star(g, h)); },
            [&] {
                return "f=" + textio::to_text(f) + " g=" + textio::to_text(g) +
                       " h=" + textio::to_text(h);
            });
    }
    return r.finish();
}

CheckResult hochschild_b_squared(std::uint64_t seed, unsigned cases) {
    Runner r("hochschild-b-squared");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned rank = 1 + rng.below(2);
        const unsigned m = 2 + rng.below(3);  // b^2 needs degree >= 2
        Chain c = random_chain(rng, rank, m, 2);
        if (rng.below(2) == 1)
            c += random_chain(rng, rank, m, 2).scaled(HbarPoly::i_hbar());
        r.run_case(
            [&] {
                for (const auto mul : {ProductChoice::moyal, ProductChoice::commutative})
                    if (!hochschild_b(hochschild_b(c, mul), mul).is_zero()) return false;
                return true;
            },
            [&] { return textio::to_text(c); });
    }
    return r.finish();
}

CheckResult bv_delta_squared(std::uint64_t seed, unsigned cases) {
    Runner r("bv-delta-squared");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned rank = 1 + rng.below(2);
        const Form w = random_form(rng, rank, 3);
        r.run_case([&] { return bv_delta(bv_delta(w)).is_zero(); },
                   [&] { return textio::to_text(w); });
    }
    return r.finish();
}

CheckResult classical_chain_map(std::uint64_t seed, unsigned cases) {
    Runner r("classical-chain-map");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned rank = 1 + rng.below(2);
        const unsigned m = 1 + rng.below(3);
        const Chain c = random_chain(rng, rank, m, 3);
        r.run_case(
            [&] {
                return forms::classical_hkr(hochschild_b(c, ProductChoice::commutative)).is_zero();
            },
            [&] { return textio::to_text(c); });
    }
    return r.finish();
}

CheckResult quantum_chain_map(std::uint64_t seed, unsigned cases, unsigned max_rank,
                              unsigned max_m, unsigned max_factor_degree) {
    Runner r("quantum-chain-map");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned rank = 1 + rng.below(max_rank);
        const unsigned m = 1 + rng.below(max_m);
        const Chain c = random_chain(rng, rank, m, max_factor_degree);
        r.run_case([&] { return hkr::chain_map_check(c).equal; },
                   [&] { return textio::to_text(c); });
    }
    return r.finish();
}

CheckResult wick_vs_pairings(std::uint64_t seed, unsigned cases) {
    Runner r("wick-engine-vs-pairings");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned rank = 1 + rng.below(2);
        const unsigned nslots = 2 + rng.below(3);
        const std::vector<Rational> times = distinct_times(rng, nslots);
        std::vector<std::pair<PhasePoly, TimePoint>> vs;
        unsigned budget = 6;
        for (unsigned k = 0; k < nslots; ++k) {
            const unsigned deg = rng.below(std::min(budget, 3u) + 1);
            budget -= deg;
            Monomial mono{std::vector<unsigned>(rank, 0), std::vector<unsigned>(rank, 0)};
            for (unsigned d = 0; d < deg; ++d) {
                const unsigned slot = rng.below(2 * rank);
                (slot < rank ? mono.xe[slot] : mono.pe[slot - rank])++;
            }
            vs.push_back({PhasePoly::from_monomial(rank, std::move(mono),
                                                   HbarPoly(static_cast<long>(1 + rng.below(3)))),
                          TimePoint(times[k])});
        }
        r.run_case([&] { return wick_correlator(vs) == correlator_via_pairings(vs); },
                   [&] {
                       std::string d;
                       for (const auto& [f, t] : vs)
                           d += textio::to_text(f) + "@" + coeff::to_string(t.value()) + " ";
                       return d;
                   });
    }
    return r.finish();
}

CheckResult chamber_specializes_to_wick(std::uint64_t seed, unsigned cases) {
    Runner r("chamber-specialization");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned rank = 1 + rng.below(2);
        const unsigned m = 1 + rng.below(3);
        std::vector<Rational> thetas = distinct_times(rng, m);
        std::sort(thetas.rbegin(), thetas.rend());
        // avoid theta = 0: tick 0 would collide with the pinned slot
        for (Rational& t : thetas)
            if (t == 0) t = coeff::make_rational(1, 194);
        std::sort(thetas.rbegin(), thetas.rend());

        std::vector<std::pair<PhasePoly, TimePoint>> vs;
        std::vector<Form> slots;
        for (unsigned k = 0; k <= m; ++k) {
            const PhasePoly f = random_monomial(rng, rank, 2);
            vs.push_back({f, TimePoint(k == 0 ? Rational(0) : thetas[k - 1])});
            slots.push_back(Form::zero_form(f));
        }
        r.run_case(
            [&] {
                const auto symbolic = correlator::chamber_correlator(slots);
                PhasePoly eval(rank);
                for (const auto& [e, form] : symbolic.terms()) {
                    Rational w(1);
                    for (unsigned k = 0; k < m; ++k)
                        for (unsigned j = 0; j < e[k]; ++j) w *= thetas[k];
                    eval += form.component(0).scaled(HbarPoly(w));
                }
                return eval == wick_correlator(vs);
            },
            [&] {
                std::string d;
                for (const auto& [f, t] : vs)
                    d += textio::to_text(f) + "@" + coeff::to_string(t.value()) + " ";
                return d;
            });
    }
    return r.finish();
}

CheckResult simplex_integral_oracle(std::uint64_t seed, unsigned cases) {
    Runner r("simplex-integral-oracle");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned m = 1 + rng.below(4);
        std::vector<unsigned> e(m);
        for (unsigned& v : e) v = rng.below(6);
        r.run_case(
            [&] {
                hkr::ThetaPoly<HbarPoly> mono(m);
                mono.add_term(e, HbarPoly::one());
                return simplex_integrate(mono, HbarPoly()) ==
                       HbarPoly(hkr::simplex_monomial_integral(e));
            },
            [&] {
                std::string d = "exponents:";
                for (unsigned v : e) d += " " + std::to_string(v);
                return d;
            });
    }
    return r.finish();
}

CheckResult parser_round_trip(std::uint64_t seed, unsigned cases) {
    Runner r("parser-round-trip");
    Rng rng(seed);
    for (unsigned it = 0; it < cases; ++it) {
        const unsigned rank = 1 + rng.below(3);
        const PhasePoly f = random_poly(rng, rank, 4, 5);
        r.run_case([&] { return textio::parse_poly(textio::to_text(f), rank) == f; },
                   [&] { return textio::to_text(f); });
    }
    return r.finish();
}

CheckResult partition_truncation_tail() {
    Runner r("partition-truncation-tail");
    r.run_case(
        [] { return montecarlo::partition_exact(1.0, 1.0, 0, 1) == 1.0; },
        [] { return std::string("empty product"); });
    r.run_case(
        [] {
            const double exact = montecarlo::partition_exact(1.0, 1.0, 10000, 1);
            const double limit = montecarlo::partition_sinh_limit(1.0, 1.0, 1);
            return std::abs(exact - limit) < 1e-5;
        },
        [] { return std::string("truncated product at N=10000, sigma2=hbar=1"); });
    return r.finish();
}

CheckResult propagator_sawtooth_limit() {
    Runner r("propagator-sawtooth-limit");
    for (int num = 1; num <= 3; ++num) {
        const double u = num / 8.0;
        r.run_case(
            [&] {
                const auto v = montecarlo::propagator_oracle(1e4, 1.0, 1000000,
                                                             montecarlo::PropagatorKind::XP,
                                                             0.0, u);
                return std::abs(v.imag() - (0.5 - u)) <= 0.05;
            },
            [&] { return "u=" + std::to_string(num) + "/8"; });
    }
    return r.finish();
}

CheckResult mc_thread_invariance(std::uint64_t seed) {
    Runner r("mc-thread-invariance");
    montecarlo::MCConfig cfg;
    cfg.modes = 8;
    cfg.samples = 20000;
    cfg.seed = seed;
    const std::vector<montecarlo::FieldInsertion> ins = {
        {montecarlo::FieldKind::X, 1, 0.0}, {montecarlo::FieldKind::P, 1, 0.25}};
    const auto base = montecarlo::estimate_correlator(ins, cfg, 1);
    for (unsigned threads : {2u, 5u}) {
        r.run_case(
            [&] {
                const auto est = montecarlo::estimate_correlator(ins, cfg, threads);
                return est.mean == base.mean && est.stderr_re == base.stderr_re &&
                       est.stderr_im == base.stderr_im;
            },
            [&] { return "threads=" + std::to_string(threads); });
    }
    return r.finish();
}

CheckResult mc_matches_oracles(std::uint64_t seed) {
    Runner r("mc-vs-oracles");
    montecarlo::MCConfig cfg;
    cfg.modes = 16;
    cfg.samples = 200000;
    cfg.seed = seed;
    r.run_case(
        [&] {
            const auto est = montecarlo::estimate_correlator({}, cfg);
            const double exact =
                montecarlo::partition_exact(cfg.sigma2, cfg.hbar, cfg.modes, cfg.rank);
            return est.stderr_re > 0.0 &&
                   std::abs(est.mean.real() - exact) < 4.0 * est.stderr_re &&
                   std::abs(est.mean.imag()) < 4.0 * est.stderr_im;
        },
        [&] { return std::string("partition estimate vs truncated product"); });
    r.run_case(
        [&] {
            const std::vector<montecarlo::FieldInsertion> ins = {
                {montecarlo::FieldKind::X, 1, 0.0}, {montecarlo::FieldKind::P, 1, 0.25}};
            const auto est = montecarlo::estimate_correlator(ins, cfg);
            const auto oracle = montecarlo::propagator_oracle(
                cfg.sigma2, cfg.hbar, cfg.modes, montecarlo::PropagatorKind::XP, 0.0, 0.25);
            return std::abs(est.mean.imag() - oracle.imag()) < 4.0 * est.stderr_im &&
                   std::abs(est.mean.real()) < 4.0 * est.stderr_re;
        },
        [&] { return std::string("two-point estimate vs finite-variance oracle"); });
    return r.finish();
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
    std::vector<CheckResult> out;
    out.push_back(moyal_associativity(seed, 500));
    out.push_back(hochschild_b_squared(seed, 200));
    out.push_back(bv_delta_squared(seed, 200));
    out.push_back(classical_chain_map(seed, 200));
    out.push_back(quantum_chain_map(seed, 50, 2, 3, 2));
    out.push_back(wick_vs_pairings(seed, 200));
    out.push_back(chamber_specializes_to_wick(seed, 40));
    out.push_back(simplex_integral_oracle(seed, 200));
    out.push_back(parser_round_trip(seed, 1000));
    out.push_back(partition_truncation_tail());
    out.push_back(propagator_sawtooth_limit());
    out.push_back(mc_thread_invariance(seed));
    out.push_back(mc_matches_oracles(seed));
    return out;
}

}  // namespace tqm::checks
