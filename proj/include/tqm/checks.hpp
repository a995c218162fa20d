#pragma once

#include "tqm/forms.hpp"
#include "tqm/hochschild.hpp"
#include "tqm/weyl.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tqm::checks {

// One named invariant suite: `cases` runs, failing inputs serialized into
// `messages` (capped). Shared by the selftest and hkr-check commands and by
// the acceptance runner, so the property definitions live in exactly one
// place.
struct CheckResult {
    std::string name;
    unsigned cases = 0;
    unsigned failures = 0;
    std::vector<std::string> messages;
    double seconds = 0.0;

    bool ok() const { return failures == 0; }
};

// splitmix64; self-contained so reports are reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    unsigned below(unsigned bound) { return static_cast<unsigned>(next() % bound); }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }

private:
    std::uint64_t state_;
};

weyl::PhasePoly random_monomial(Rng& rng, unsigned rank, unsigned max_degree);
weyl::PhasePoly random_poly(Rng& rng, unsigned rank, unsigned max_degree, unsigned max_terms);
hochschild::Chain random_chain(Rng& rng, unsigned rank, unsigned degree,
                               unsigned max_factor_degree);
forms::Form random_form(Rng& rng, unsigned rank, unsigned max_degree);

CheckResult moyal_associativity(std::uint64_t seed, unsigned cases);
CheckResult hochschild_b_squared(std::uint64_t seed, unsigned cases);
CheckResult bv_delta_squared(std::uint64_t seed, unsigned cases);
CheckResult classical_chain_map(std::uint64_t seed, unsigned cases);
CheckResult quantum_chain_map(std::uint64_t seed, unsigned cases, unsigned max_rank,
                              unsigned max_m, unsigned max_factor_degree);
CheckResult wick_vs_pairings(std::uint64_t seed, unsigned cases);
CheckResult chamber_specializes_to_wick(std::uint64_t seed, unsigned cases);
CheckResult simplex_integral_oracle(std::uint64_t seed, unsigned cases);
CheckResult parser_round_trip(std::uint64_t seed, unsigned cases);
CheckResult partition_truncation_tail();
CheckResult propagator_sawtooth_limit();
CheckResult mc_thread_invariance(std::uint64_t seed);
CheckResult mc_matches_oracles(std::uint64_t seed);

// The full battery at the sizes the command-line selftest advertises.
std::vector<CheckResult> run_all(std::uint64_t seed);

}  // namespace tqm::checks
