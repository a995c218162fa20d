#include "tqm/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace tqm::montecarlo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t sample, std::uint64_t counter) {
    return mix64(mix64(mix64(seed) ^ sample) ^ counter);
}

void fill_sample(const MCConfig& cfg, std::uint64_t sample_index, ModeSample& out) {
    out.modes = cfg.modes;
    out.rank = cfg.rank;
    out.data.resize(static_cast<std::size_t>(cfg.rank) * cfg.modes * 4);
    const double sigma = std::sqrt(cfg.sigma2);
    std::uint64_t draw = 0;
    for (double& v : out.data) v = sigma * normal_draw(cfg.seed, sample_index, draw++);
}

}  // namespace

void validate(const MCConfig& cfg) {
    if (cfg.modes == 0) throw std::domain_error("mc config: modes must be positive");
    if (!(cfg.sigma2 > 0.0) || !std::isfinite(cfg.sigma2))
        throw std::domain_error("mc config: sigma2 must be positive and finite");
    if (!(cfg.hbar > 0.0) || !std::isfinite(cfg.hbar))
        throw std::domain_error("mc config: hbar must be positive and finite");
    if (cfg.samples == 0) throw std::domain_error("mc config: samples must be positive");
    if (cfg.rank == 0) throw std::domain_error("mc config: rank must be positive");
}

double normal_draw(std::uint64_t seed, std::uint64_t sample, std::uint64_t draw) {
    constexpr double kScale = 0x1.0p-53;
    const double u1 = static_cast<double>((counter_hash(seed, sample, 2 * draw) >> 11) + 1) * kScale;
    const double u2 = static_cast<double>(counter_hash(seed, sample, 2 * draw + 1) >> 11) * kScale;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::string generator_id() { return "splitmix64-counter-boxmuller-v1"; }

ModeSample draw_sample(const MCConfig& cfg, std::uint64_t sample_index) {
    validate(cfg);
    ModeSample s;
    fill_sample(cfg, sample_index, s);
    return s;
}

double field_eval(const ModeSample& s, double t, FieldKind which, unsigned index) {
    if (index == 0 || index > s.rank) throw std::domain_error("field component out of range");
    const unsigned slot = which == FieldKind::X ? 0 : 2;
    double acc = 0.0;
    for (unsigned m = 1; m <= s.modes; ++m) {
        const double w = 2.0 * kPi * m * t;
        acc += (std::cos(w) * s.coeff(index, m, slot) + std::sin(w) * s.coeff(index, m, slot + 1)) /
               (kSqrt2 * kPi * m);
    }
    return acc;
}

double action(const ModeSample& s) {
    double acc = 0.0;
    for (unsigned i = 1; i <= s.rank; ++i)
        for (unsigned m = 1; m <= s.modes; ++m)
            acc += (s.coeff(i, m, 0) * s.coeff(i, m, 3) - s.coeff(i, m, 1) * s.coeff(i, m, 2)) /
                   (2.0 * kPi * m);
    return acc;
}

ComplexEstimate estimate_correlator(const std::vector<FieldInsertion>& insertions,
                                    const MCConfig& cfg, unsigned threads) {
    validate(cfg);
    for (const FieldInsertion& ins : insertions) {
        if (ins.index == 0 || ins.index > cfg.rank)
            throw std::domain_error("insertion component out of range");
        if (!std::isfinite(ins.time)) throw std::domain_error("insertion time must be finite");
    }

    // Per-insertion mode weights, so the sample loop reduces to dot products.
    struct Table {
        unsigned index;
        unsigned slot;
        std::vector<double> c, s;
    };
    std::vector<Table> tables;
    tables.reserve(insertions.size());
    for (const FieldInsertion& ins : insertions) {
        Table tab{ins.index, ins.which == FieldKind::X ? 0u : 2u, {}, {}};
        tab.c.resize(cfg.modes);
        tab.s.resize(cfg.modes);
        for (unsigned m = 1; m <= cfg.modes; ++m) {
            const double w = 2.0 * kPi * m * ins.time;
            const double norm = kSqrt2 * kPi * m;
            tab.c[m - 1] = std::cos(w) / norm;
            tab.s[m - 1] = std::sin(w) / norm;
        }
        tables.push_back(std::move(tab));
    }

    // Fixed-size chunks summed in chunk order make the reduction independent
    // of how chunks land on workers.
    constexpr std::uint64_t kChunk = 4096;
    const std::uint64_t n = cfg.samples;
    const std::uint64_t nchunks = (n + kChunk - 1) / kChunk;

    struct Partials {
        double s[4] = {};
        double m2[10] = {};
    };
    std::vector<Partials> parts(nchunks);

    auto run_chunk = [&](std::uint64_t ci, ModeSample& scratch) {
        Partials p;
        const std::uint64_t lo = ci * kChunk;
        const std::uint64_t hi = std::min(n, lo + kChunk);
        for (std::uint64_t k = lo; k < hi; ++k) {
            fill_sample(cfg, k, scratch);
            const double phase = action(scratch) / cfg.hbar;
            const double wr = std::cos(phase);
            const double wi = std::sin(phase);
            double obs = 1.0;
            for (const Table& tab : tables) {
                double f = 0.0;
                for (unsigned m = 1; m <= cfg.modes; ++m)
                    f += tab.c[m - 1] * scratch.coeff(tab.index, m, tab.slot) +
                         tab.s[m - 1] * scratch.coeff(tab.index, m, tab.slot + 1);
                obs *= f;
            }
            const double v[4] = {obs * wr, obs * wi, wr, wi};
            int idx = 0;
            for (int a = 0; a < 4; ++a) {
                p.s[a] += v[a];
                for (int b = a; b < 4; ++b) p.m2[idx++] += v[a] * v[b];
            }
        }
        parts[ci] = p;
    };

    unsigned nthreads = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = static_cast<unsigned>(std::min<std::uint64_t>(nthreads, nchunks));

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        ModeSample scratch;
        for (;;) {
            const std::uint64_t ci = next.fetch_add(1);
            if (ci >= nchunks) return;
            run_chunk(ci, scratch);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& th : pool) th.join();

    double sums[4] = {};
    double m2[10] = {};
    for (const Partials& p : parts) {
        for (int a = 0; a < 4; ++a) sums[a] += p.s[a];
        for (int j = 0; j < 10; ++j) m2[j] += p.m2[j];
    }
    double mean[4];
    const double dn = static_cast<double>(n);
    for (int a = 0; a < 4; ++a) mean[a] = sums[a] / dn;
    double cov[4][4] = {};
    if (n > 1) {
        int idx = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a; b < 4; ++b) {
                const double c = (m2[idx++] - dn * mean[a] * mean[b]) / (dn - 1.0);
                cov[a][b] = cov[b][a] = c;
            }
    }

    if (insertions.empty()) {
        return {std::complex<double>(mean[2], mean[3]),
                std::sqrt(std::max(0.0, cov[2][2] / dn)),
                std::sqrt(std::max(0.0, cov[3][3] / dn)), n};
    }

    const double ar = mean[0], ai = mean[1], br = mean[2], bi = mean[3];
    const double d = br * br + bi * bi;
    const double denom_err = std::sqrt(std::max(0.0, (cov[2][2] + cov[3][3]) / dn));
    if (d == 0.0 || std::sqrt(d) <= 2.0 * denom_err)
        throw SignProblemError(
            "weight mean is consistent with zero at this sample size; "
            "reduce sigma2 or increase samples");

    const double rr = (ar * br + ai * bi) / d;
    const double ri = (ai * br - ar * bi) / d;
    const double gr[4] = {br / d, bi / d, (ar - 2.0 * br * rr) / d, (ai - 2.0 * bi * rr) / d};
    const double gi[4] = {-bi / d, br / d, (ai - 2.0 * br * ri) / d, (-ar - 2.0 * bi * ri) / d};
    double var_re = 0.0, var_im = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            var_re += gr[a] * cov[a][b] * gr[b];
            var_im += gi[a] * cov[a][b] * gi[b];
        }
    return {std::complex<double>(rr, ri), std::sqrt(std::max(0.0, var_re / dn)),
            std::sqrt(std::max(0.0, var_im / dn)), n};
}

double partition_exact(double sigma2, double hbar, unsigned modes, unsigned rank) {
    if (!(sigma2 > 0.0) || !(hbar > 0.0)) throw std::domain_error("partition: parameters must be positive");
    if (rank == 0) throw std::domain_error("partition: rank must be positive");
    double per_component = 1.0;
    for (unsigned m = 1; m <= modes; ++m) {
        const double q = sigma2 / (2.0 * kPi * m * hbar);
        per_component /= 1.0 + q * q;
    }
    double out = 1.0;
    for (unsigned i = 0; i < rank; ++i) out *= per_component;
    return out;
}

double partition_sinh_limit(double sigma2, double hbar, unsigned rank) {
    if (!(sigma2 > 0.0) || !(hbar > 0.0)) throw std::domain_error("partition: parameters must be positive");
    if (rank == 0) throw std::domain_error("partition: rank must be positive");
    const double x = sigma2 / (2.0 * hbar);
    const double per_component = x / std::sinh(x);
    double out = 1.0;
    for (unsigned i = 0; i < rank; ++i) out *= per_component;
    return out;
}

std::complex<double> propagator_oracle(double sigma2, double hbar, unsigned modes,
                                       PropagatorKind kind, double t, double s) {
    if (!(sigma2 > 0.0) || !(hbar > 0.0)) throw std::domain_error("oracle: parameters must be positive");
    const double alpha = 1.0 / sigma2;
    const double u = s - t;
    double acc = 0.0;
    for (unsigned m = 1; m <= modes; ++m) {
        const double beta = 1.0 / (2.0 * kPi * m * hbar);
        const double denom = alpha * alpha + beta * beta;
        const double scale = 1.0 / (2.0 * kPi * kPi * m * m);
        if (kind == PropagatorKind::XP)
            acc += std::sin(2.0 * kPi * m * u) * scale * beta / denom;
        else
            acc += std::cos(2.0 * kPi * m * u) * scale * alpha / denom;
    }
    return kind == PropagatorKind::XP ? std::complex<double>(0.0, acc)
                                      : std::complex<double>(acc, 0.0);
}

}  // namespace tqm::montecarlo
