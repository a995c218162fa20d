#include "tqm/montecarlo.hpp"

#include <doctest.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

// Runs the installed CLI with stderr suppressed; stdout and the exit code
// are what the contracts pin down.
RunResult run_cli(const std::string& args) {
    const char* env = std::getenv("TQM_CLI");
    const std::string cmd = std::string(env ? env : "./tqm") + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_SUITE("cli") {
    TEST_CASE("star emits the worked product in both formats") {
        const auto text = run_cli("star --r 1 --format text \"x1\" \"p1\"");
        CHECK(text.exit_code == 0);
        CHECK(text.out == "x1*p1 + 1/2*i*h\n");

        const auto js = run_cli("star \"x1\" \"p1\"");
        CHECK(js.exit_code == 0);
        const auto j = nlohmann::json::parse(js.out);
        CHECK(j.at("kind") == "poly");
        CHECK(j.at("rank") == 1);
        CHECK(j.at("text") == "x1*p1 + 1/2*i*h");
        CHECK(j.at("terms").size() == 2);
    }

    TEST_CASE("exit codes separate usage, domain, and check failures") {
        CHECK(run_cli("star \"x1 +\" \"p1\"").exit_code == 1);      // syntax
        CHECK(run_cli("star --bogus \"x1\" \"p1\"").exit_code == 1);  // unknown flag
        CHECK(run_cli("star \"x3\" \"p1\"").exit_code == 2);        // rank violation
        CHECK(run_cli("star \"x1/h\" \"p1\"").exit_code == 2);      // non-invertible divisor
        CHECK(run_cli("partition --sigma2 0 --exact-only").exit_code == 1);
        CHECK(run_cli("partition --sigma2 -3 --exact-only").exit_code == 1);
        CHECK(run_cli("nosuchcmd").exit_code == 1);
        CHECK(run_cli("--help").exit_code == 0);
        // Deep quantum regime at tiny sample size: the ratio denominator is
        // indistinguishable from zero, which is a domain error, not a crash.
        CHECK(run_cli("mc-propagator --kind XP --t 0 --s 1/4 --sigma2 40 --samples 2000 "
                      "--seed 3")
                  .exit_code == 2);
    }

    TEST_CASE("b applies the selected product") {
        const auto moyal = run_cli("b --format text \"x1 | p1\"");
        CHECK(moyal.exit_code == 0);
        CHECK(moyal.out == "(i*h)\n");

        const auto comm = run_cli("b --product commutative \"x1 | p1\"");
        CHECK(comm.exit_code == 0);
        const auto j = nlohmann::json::parse(comm.out);
        CHECK(j.at("degree") == 0);
        CHECK(j.at("terms").empty());  // xp - px = 0
    }

    TEST_CASE("hkr maps a chain to a form") {
        const auto r = run_cli("hkr --format text \"x1 | p1\"");
        CHECK(r.exit_code == 0);
        CHECK(r.out == "[dp1] x1\n");

        const auto js = run_cli("hkr \"x1 | p1 | x1*p1\"");
        CHECK(js.exit_code == 0);
        const auto j = nlohmann::json::parse(js.out);
        CHECK(j.at("kind") == "hkr");
        CHECK(j.at("degree") == 2);
        CHECK(j.at("value").at("components").size() == 1);
        CHECK(j.at("value").at("components")[0].at("generators") ==
              nlohmann::json::array({"dx1", "dp1"}));
    }

    TEST_CASE("hkr-check reports are byte-identical for identical flags") {
        const std::string flags = "hkr-check --r 2 --max-m 2 --max-degree 2 --cases 8 --seed 11";
        const auto a = run_cli(flags);
        const auto b = run_cli(flags);
        CHECK(a.exit_code == 0);
        CHECK(a.out == b.out);
        const auto j = nlohmann::json::parse(a.out);
        CHECK(j[0].at("name") == "quantum-chain-map");
        CHECK(j[0].at("cases") == 8);
        CHECK(j[0].at("failures") == 0);
    }

    TEST_CASE("wick evaluates observables at rational times") {
        const auto r = run_cli("wick --format text \"x1@0\" \"x1@1/2\" \"p1@1/4\" \"p1@3/4\"");
        CHECK(r.exit_code == 0);
        CHECK(r.out == "x1^2*p1^2 - 1/8*h^2\n");

        CHECK(run_cli("wick \"x1@1/4\" \"p1@1/4\"").exit_code == 2);  // coincident times
        CHECK(run_cli("wick \"x1\"").exit_code == 1);                 // missing @time
        CHECK(run_cli("wick \"x1@oops\"").exit_code == 1);
    }

    TEST_CASE("partition --exact-only matches the library values") {
        const auto r = run_cli("partition --sigma2 1 --modes 16 --exact-only");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(!j.contains("mc"));
        CHECK(j.at("exact_truncated").get<double>() ==
              doctest::Approx(tqm::montecarlo::partition_exact(1.0, 1.0, 16, 1)).epsilon(1e-14));
        CHECK(j.at("exact_sinh_limit").get<double>() ==
              doctest::Approx(tqm::montecarlo::partition_sinh_limit(1.0, 1.0, 1)).epsilon(1e-14));
    }

    TEST_CASE("mc-propagator reports the oracle and a consistent estimate") {
        const auto oracle = run_cli("mc-propagator --kind XP --t 0 --s 1/4 --oracle-only");
        CHECK(oracle.exit_code == 0);
        const auto jo = nlohmann::json::parse(oracle.out);
        CHECK(jo.at("oracle_re").get<double>() == 0.0);
        CHECK(jo.at("oracle_im").get<double>() ==
              doctest::Approx(0.0076131305983455047).epsilon(1e-14));
        CHECK(!jo.contains("mc"));

        const auto est = run_cli(
            "mc-propagator --kind XP --t 0 --s 1/4 --samples 100000 --seed 9 --threads 2");
        CHECK(est.exit_code == 0);
        const auto je = nlohmann::json::parse(est.out);
        const double mean = je.at("mc").at("mean_im").get<double>();
        const double err = je.at("mc").at("stderr_im").get<double>();
        CHECK(std::abs(mean - je.at("oracle_im").get<double>()) < 4 * err);
        CHECK(je.at("mc").at("generator_id") == tqm::montecarlo::generator_id());
    }

    TEST_CASE("selftest runs every suite clean") {
        const auto r = run_cli("selftest --seed 2");
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j.size() == 13);
        for (const auto& suite : j) CHECK(suite.at("failures") == 0);
    }
}
