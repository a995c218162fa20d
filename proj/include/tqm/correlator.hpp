#pragma once

#include "tqm/forms.hpp"
#include "tqm/thetapoly.hpp"
#include "tqm/weyl.hpp"

#include <utility>
#include <vector>

namespace tqm::correlator {

using coeff::GaussianRational;
using coeff::HbarPoly;
using coeff::Rational;
using weyl::PhasePoly;

// Point on the circle R/Z, stored reduced into [0, 1).
class TimePoint {
public:
    TimePoint() : value_(0) {}
    explicit TimePoint(const Rational& t);

    const Rational& value() const { return value_; }

    friend bool operator==(const TimePoint& a, const TimePoint& b) { return a.value_ == b.value_; }

private:
    Rational value_;
};

// Periodic odd kernel: 1/2 - frac(u) away from the lattice, 0 on it.
Rational saw(const Rational& u);

// <X(t1) P(t2)> = ih * saw(t1 - t2). Antisymmetric; approaches +ih/2 as
// t1 -> t2 from above and -ih/2 from below.
HbarPoly propagator(const TimePoint& t1, const TimePoint& t2);

// Observable O_f(t) (or O_df(t) when the form has positive degree).
struct Vertex {
    TimePoint time;
    forms::Form observable;
};

// Exact correlator of shifted observables at pairwise distinct times:
// exp(D) on the multi-copy product, copies identified afterwards.
forms::Form wick_correlator(const std::vector<Vertex>& vertices);

// Convenience overload for plain polynomial observables.
PhasePoly wick_correlator(const std::vector<std::pair<PhasePoly, TimePoint>>& vertices);

// One field insertion X^index(time) or P_index(time).
struct Insertion {
    unsigned index;  // 1..r
    TimePoint time;
};

// Independent evaluation path: sum over index-matching bijections between X
// and P insertions of products of propagators. Zero on any count mismatch.
HbarPoly wick_pairings_oracle(const std::vector<Insertion>& xs, const std::vector<Insertion>& ps);

// Symbolic correlator on the chamber 1 = theta_0 > theta_1 > ... > theta_m > 0
// with slot k at time theta_k; between slots a < b the propagator is the
// linear polynomial ih(1/2 - theta_a + theta_b).
hkr::ThetaPoly<forms::Form> chamber_correlator(const std::vector<forms::Form>& factors);

}  // namespace tqm::correlator
