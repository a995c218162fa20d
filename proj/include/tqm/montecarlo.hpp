#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tqm::montecarlo {

// Everything in this module is binary64; the exact engine never consumes
// values produced here. Fixing (modes, sigma2, hbar, samples, seed, rank)
// fixes every output bit, independent of the worker count.
struct MCConfig {
    unsigned modes = 16;  // Fourier truncation N
    double sigma2 = 1.0;  // variance of the mode coefficients
    double hbar = 1.0;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 1;
    unsigned rank = 1;
};

// Throws std::domain_error unless every field is positive and finite.
void validate(const MCConfig& cfg);

enum class FieldKind { X, P };

struct FieldInsertion {
    FieldKind which;
    unsigned index;  // component, 1-based
    double time;
};

// One draw of the truncated field: four normals (X, Y, P, Q) per mode per
// component, each N(0, sigma2).
struct ModeSample {
    unsigned modes = 0;
    unsigned rank = 0;
    std::vector<double> data;  // layout [component][mode][{X,Y,P,Q}]

    double coeff(unsigned index, unsigned mode, unsigned slot) const {
        return data[((index - 1) * modes + (mode - 1)) * 4 + slot];
    }
    double& coeff(unsigned index, unsigned mode, unsigned slot) {
        return data[((index - 1) * modes + (mode - 1)) * 4 + slot];
    }
};

struct ComplexEstimate {
    std::complex<double> mean;
    double stderr_re = 0.0;
    double stderr_im = 0.0;
    std::uint64_t n = 0;
};

// Oscillatory weight averaged to something indistinguishable from zero; the
// ratio estimate would be noise.
struct SignProblemError : std::domain_error {
    explicit SignProblemError(const std::string& what) : std::domain_error(what) {}
};

// Counter-based standard normal: the value depends only on the arguments, so
// samples can be generated in any order on any number of workers.
double normal_draw(std::uint64_t seed, std::uint64_t sample, std::uint64_t draw);

// Identifies the sampling scheme in serialized output.
std::string generator_id();

ModeSample draw_sample(const MCConfig& cfg, std::uint64_t sample_index);

// Truncated Fourier sum sum_m 1/(sqrt(2) pi m) (cos(2 pi m t) a_m + sin(2 pi m t) b_m)
// with (a, b) = (X, Y) for the X field and (P, Q) for the P field.
double field_eval(const ModeSample& s, double t, FieldKind which, unsigned index);

// sum over components and modes of 1/(2 pi m) (X_m Q_m - Y_m P_m).
double action(const ModeSample& s);

// Mean of prod(insertions) e^{iS/hbar} divided by the mean of e^{iS/hbar},
// with delta-method standard errors on the ratio. Empty insertion list:
// returns the plain weight mean (the partition estimate) instead of the
// trivial ratio 1. threads = 0 picks the hardware concurrency.
ComplexEstimate estimate_correlator(const std::vector<FieldInsertion>& insertions,
                                    const MCConfig& cfg, unsigned threads = 0);

// prod_{m<=N} (1 + (sigma2 / 2 pi m hbar)^2)^{-r}; N = 0 gives 1.
double partition_exact(double sigma2, double hbar, unsigned modes, unsigned rank);

// N -> infinity limit: ((sigma2/2hbar) / sinh(sigma2/2hbar))^r.
double partition_sinh_limit(double sigma2, double hbar, unsigned rank);

enum class PropagatorKind { XP, XX, PP };

// Exact finite-(sigma, N) two-point function of the weighted Gaussian, from
// the per-mode integrals: with alpha = 1/sigma2, beta_m = 1/(2 pi m hbar),
//   XP: sum_m i sin(2 pi m (s-t)) / (2 pi^2 m^2) * beta_m / (alpha^2 + beta_m^2)
//   XX, PP: sum_m cos(2 pi m (s-t)) / (2 pi^2 m^2) * alpha / (alpha^2 + beta_m^2)
std::complex<double> propagator_oracle(double sigma2, double hbar, unsigned modes,
                                       PropagatorKind kind, double t, double s);

}  // namespace tqm::montecarlo
