#include "tqm/checks.hpp"
#include "tqm/correlator.hpp"
#include "tqm/hkr.hpp"
#include "tqm/montecarlo.hpp"
#include "tqm/textio.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
namespace textio = tqm::textio;
namespace mc = tqm::montecarlo;

constexpr int kExitUsage = 1;
constexpr int kExitDomain = 2;
constexpr int kExitCheckFailed = 3;

double rational_flag(const std::string& src) {
    return textio::parse_rational(src).convert_to<double>();
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

ordered_json check_report_json(const std::vector<tqm::checks::CheckResult>& results) {
    // No timings here: reports must be byte-identical across runs.
    auto arr = ordered_json::array();
    for (const auto& r : results) {
        arr.push_back({{"name", r.name},
                       {"cases", r.cases},
                       {"failures", r.failures},
                       {"messages", r.messages}});
    }
    return arr;
}

int finish_checks(const std::vector<tqm::checks::CheckResult>& results, bool json_format) {
    bool all_ok = true;
    for (const auto& r : results) {
        all_ok = all_ok && r.ok();
        std::fprintf(stderr, "%-28s %5u cases  %u failures  (%.2fs)\n", r.name.c_str(),
                     r.cases, r.failures, r.seconds);
    }
    if (json_format) {
        emit(check_report_json(results));
    } else {
        for (const auto& r : results) {
            std::cout << (r.ok() ? "ok   " : "FAIL ") << r.name << " (" << r.cases
                      << " cases)\n";
            for (const auto& m : r.messages) std::cout << "     " << m << "\n";
        }
    }
    return all_ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact engine and stochastic verifier for circle correlators"};
    app.require_subcommand(1);
    app.fallthrough();  // accept --format after the subcommand name

    std::string format = "json";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();

    unsigned rank = 1;
    std::string product = "moyal";
    std::string expr_f, expr_g, chain_src;
    std::vector<std::string> wick_args;

    auto* star = app.add_subcommand("star", "Moyal star product of two polynomials");
    star->add_option("--r", rank, "phase-space rank")->capture_default_str();
    star->add_option("f", expr_f, "left factor")->required();
    star->add_option("g", expr_g, "right factor")->required();

    auto* bcmd = app.add_subcommand("b", "Hochschild differential of a chain");
    bcmd->add_option("--r", rank, "phase-space rank")->capture_default_str();
    bcmd->add_option("--product", product, "algebra product")
        ->check(CLI::IsMember({"moyal", "commutative"}))
        ->capture_default_str();
    bcmd->add_option("chain", chain_src, "'|'-separated factors")->required();

    auto* hkrcmd = app.add_subcommand("hkr", "quantum HKR map of a chain");
    hkrcmd->add_option("--r", rank, "phase-space rank")->capture_default_str();
    hkrcmd->add_option("chain", chain_src, "'|'-separated factors")->required();

    unsigned check_cases = 25, check_max_m = 2, check_max_degree = 2;
    std::uint64_t seed = 1;
    auto* hkrchk = app.add_subcommand("hkr-check", "randomized chain-map verification");
    hkrchk->add_option("--r", rank, "max phase-space rank")->capture_default_str();
    hkrchk->add_option("--max-m", check_max_m, "max chain degree")->capture_default_str();
    hkrchk->add_option("--max-degree", check_max_degree, "max factor degree")
        ->capture_default_str();
    hkrchk->add_option("--cases", check_cases, "number of random chains")->capture_default_str();
    hkrchk->add_option("--seed", seed, "generator seed")->capture_default_str();

    auto* wick = app.add_subcommand("wick", "correlator of observables at rational times");
    wick->add_option("--r", rank, "phase-space rank")->capture_default_str();
    wick->add_option("vertices", wick_args, "observables as expr@time")->required();

    double sigma2 = 1.0, hbar = 1.0;
    unsigned modes = 16, threads = 0;
    std::uint64_t samples = 1000000;
    bool exact_only = false, oracle_only = false;
    auto* part = app.add_subcommand("partition", "partition function: exact and Monte Carlo");
    part->add_option("--sigma2", sigma2, "mode variance")
        ->required()
        ->check(CLI::PositiveNumber);
    part->add_option("--hbar", hbar, "Planck parameter")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    part->add_option("--modes", modes, "Fourier truncation")->capture_default_str();
    part->add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str();
    part->add_option("--seed", seed, "sampler seed")->capture_default_str();
    part->add_option("--r", rank, "number of components")->capture_default_str();
    part->add_option("--threads", threads, "worker cap, 0 = auto")->capture_default_str();
    part->add_flag("--exact-only", exact_only, "skip the Monte Carlo estimate");

    std::string kind = "XP", t_src = "0", s_src = "1/4";
    auto* prop = app.add_subcommand("mc-propagator",
                                    "two-point function: finite-variance oracle and Monte Carlo");
    prop->add_option("--kind", kind, "which two-point function")
        ->check(CLI::IsMember({"XP", "XX", "PP"}))
        ->capture_default_str();
    prop->add_option("--t", t_src, "first time (rational)")->capture_default_str();
    prop->add_option("--s", s_src, "second time (rational)")->capture_default_str();
    prop->add_option("--sigma2", sigma2, "mode variance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    prop->add_option("--hbar", hbar, "Planck parameter")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    prop->add_option("--modes", modes, "Fourier truncation")->capture_default_str();
    prop->add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str();
    prop->add_option("--seed", seed, "sampler seed")->capture_default_str();
    prop->add_option("--threads", threads, "worker cap, 0 = auto")->capture_default_str();
    prop->add_flag("--oracle-only", oracle_only, "skip the Monte Carlo estimate");

    auto* self = app.add_subcommand("selftest", "run every module's invariant suite");
    self->add_option("--seed", seed, "generator seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    const bool json_format = format == "json";
    try {
        if (app.got_subcommand(star)) {
            const auto f = textio::parse_poly(expr_f, rank);
            const auto g = textio::parse_poly(expr_g, rank);
            const auto result = moyal_star(f, g);
            if (json_format)
                emit(textio::to_json(result));
            else
                std::cout << textio::to_text(result) << "\n";
            return 0;
        }
        if (app.got_subcommand(bcmd)) {
            const auto c = textio::parse_chain(chain_src, rank);
            const auto choice = product == "moyal" ? tqm::hochschild::ProductChoice::moyal
                                                   : tqm::hochschild::ProductChoice::commutative;
            const auto result = hochschild_b(c, choice);
            if (json_format)
                emit(textio::to_json(result));
            else
                std::cout << textio::to_text(result) << "\n";
            return 0;
        }
        if (app.got_subcommand(hkrcmd)) {
            const auto c = textio::parse_chain(chain_src, rank);
            const auto result = tqm::hkr::quantum_hkr(c);
            if (json_format)
                emit(textio::to_json(result));
            else
                std::cout << textio::to_text(result.value) << "\n";
            return 0;
        }
        if (app.got_subcommand(hkrchk)) {
            const auto r = tqm::checks::quantum_chain_map(seed, check_cases, rank, check_max_m,
                                                          check_max_degree);
            return finish_checks({r}, json_format);
        }
        if (app.got_subcommand(wick)) {
            std::vector<std::pair<tqm::weyl::PhasePoly, tqm::correlator::TimePoint>> vs;
            for (const std::string& arg : wick_args) {
                const auto at = arg.rfind('@');
                if (at == std::string::npos)
                    throw textio::ParseError("expected expr@time", arg.size());
                vs.push_back({textio::parse_poly(arg.substr(0, at), rank),
                              tqm::correlator::TimePoint(
                                  textio::parse_rational(arg.substr(at + 1)))});
            }
            const auto result = wick_correlator(vs);
            if (json_format)
                emit(textio::to_json(result));
            else
                std::cout << textio::to_text(result) << "\n";
            return 0;
        }
        if (app.got_subcommand(part)) {
            ordered_json out = {
                {"exact_truncated", mc::partition_exact(sigma2, hbar, modes, rank)},
                {"exact_sinh_limit", mc::partition_sinh_limit(sigma2, hbar, rank)}};
            if (!exact_only) {
                mc::MCConfig cfg{modes, sigma2, hbar, samples, seed, rank};
                out["mc"] = textio::to_json(mc::estimate_correlator({}, cfg, threads), cfg);
            }
            if (json_format) {
                emit(out);
            } else {
                std::cout << "exact_truncated: " << out["exact_truncated"].dump() << "\n"
                          << "exact_sinh_limit: " << out["exact_sinh_limit"].dump() << "\n";
                if (out.contains("mc"))
                    std::cout << "mc_mean_re: " << out["mc"]["mean_re"].dump()
                              << "\nmc_stderr_re: " << out["mc"]["stderr_re"].dump() << "\n";
            }
            return 0;
        }
        if (app.got_subcommand(prop)) {
            const double t = rational_flag(t_src);
            const double s = rational_flag(s_src);
            const auto pk = kind == "XP"   ? mc::PropagatorKind::XP
                            : kind == "XX" ? mc::PropagatorKind::XX
                                           : mc::PropagatorKind::PP;
            const auto oracle = mc::propagator_oracle(sigma2, hbar, modes, pk, t, s);
            ordered_json out = {{"kind", kind},
                                {"t", t},
                                {"s", s},
                                {"oracle_re", oracle.real()},
                                {"oracle_im", oracle.imag()}};
            if (!oracle_only) {
                mc::MCConfig cfg{modes, sigma2, hbar, samples, seed, 1};
                const auto first = pk == mc::PropagatorKind::PP ? mc::FieldKind::P
                                                                : mc::FieldKind::X;
                const auto second = pk == mc::PropagatorKind::XX ? mc::FieldKind::X
                                                                 : mc::FieldKind::P;
                out["mc"] = textio::to_json(
                    mc::estimate_correlator({{first, 1, t}, {second, 1, s}}, cfg, threads), cfg);
            }
            if (json_format) {
                emit(out);
            } else {
                std::cout << "oracle: " << out["oracle_re"].dump() << " + "
                          << out["oracle_im"].dump() << " i\n";
                if (out.contains("mc"))
                    std::cout << "mc: " << out["mc"]["mean_re"].dump() << " + "
                              << out["mc"]["mean_im"].dump() << " i  (stderr "
                              << out["mc"]["stderr_re"].dump() << ", "
                              << out["mc"]["stderr_im"].dump() << ")\n";
            }
            return 0;
        }
        if (app.got_subcommand(self)) {
            return finish_checks(tqm::checks::run_all(seed), json_format);
        }
    } catch (const textio::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return kExitDomain;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomain;
    }
    return kExitUsage;
}
