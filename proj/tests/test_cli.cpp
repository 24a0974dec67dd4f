#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "zetaband/zetaband.hpp"

#ifndef ZETABAND_CLI_PATH
#error "ZETABAND_CLI_PATH must point at the zetaband binary"
#endif

namespace {

using zetaband::Band;
using zetaband::Rational;

struct RunResult {
    int exit_code = -1;
    std::string out;
};

/* Runs the binary through the shell with stderr dropped; the contract under
   test is stdout bytes plus the exit code, nothing else. `env_prefix` allows
   "VAR=value " style assignments ahead of the command. */
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    const std::string cmd =
        env_prefix + ZETABAND_CLI_PATH + " " + args + " 2>/dev/null";
    std::FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, got);
    const int status = ::pclose(pipe);
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    r.exit_code = WEXITSTATUS(status);
    return r;
}

std::filesystem::path temp_path(const char* stem) {
    return std::filesystem::temp_directory_path() /
           (std::string("zetaband_cli_test_") + stem);
}

void write_file(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    REQUIRE(out.good());
    out << text;
}

}  // namespace

TEST_CASE("cli dband row is byte stable", "[cli]") {
    const RunResult r = run_cli("dband --n 12");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "n,value\n12,2\n");
}

TEST_CASE("cli dband respects --band", "[cli]") {
    // The expected cell comes from the library, not from a copied literal.
    REQUIRE(zetaband::d_band(12, Band(Rational(1), Rational(2))) == 1);
    const RunResult r = run_cli("dband --n 12 --band 1:2");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "n,value\n12,1\n");
}

TEST_CASE("cli summatory row is byte stable", "[cli]") {
    const RunResult r = run_cli("summatory --x 12");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "x,D,main1,main2,delta\n12,9,8.31776616672,0,0.682233833281\n");
}

TEST_CASE("cli usage errors exit with 2", "[cli]") {
    CHECK(run_cli("frobnicate").exit_code == 2);
    CHECK(run_cli("dband").exit_code == 2);              // --n is required
    CHECK(run_cli("dband --n 12 --band 2:1/2").exit_code == 2);
    CHECK(run_cli("dband --n 12 --band abc").exit_code == 2);
}

TEST_CASE("cli runtime errors exit with 1", "[cli]") {
    // sigma = 1 with t = 0 sits on the pole.
    const RunResult r = run_cli("zeta-eval --sigma 1.0 --t 0");
    CHECK(r.exit_code == 1);
}

TEST_CASE("cli help and version exit cleanly", "[cli]") {
    const RunResult help = run_cli("--help");
    CHECK(help.exit_code == 0);
    CHECK_FALSE(help.out.empty());

    const RunResult version = run_cli("--version");
    CHECK(version.exit_code == 0);
    CHECK(version.out == "zetaband 1.0.0\n");
}

TEST_CASE("cli config file fills in flags and loses to them", "[cli]") {
    const auto cfg = temp_path("band.cfg");
    write_file(cfg, "# comment\n\nband = 1:2\n");

    const RunResult from_config =
        run_cli("dband --n 12 --config " + cfg.string());
    CHECK(from_config.exit_code == 0);
    CHECK(from_config.out == "n,value\n12,1\n");

    const RunResult overridden =
        run_cli("dband --n 12 --band 1/2:2 --config " + cfg.string());
    CHECK(overridden.exit_code == 0);
    CHECK(overridden.out == "n,value\n12,2\n");

    std::filesystem::remove(cfg);
}

TEST_CASE("cli config file failures are usage errors", "[cli]") {
    const auto cfg = temp_path("bogus.cfg");
    write_file(cfg, "no_such_key = 7\n");
    CHECK(run_cli("dband --n 12 --config " + cfg.string()).exit_code == 2);
    std::filesystem::remove(cfg);

    // Same path again, now missing.
    CHECK(run_cli("dband --n 12 --config " + cfg.string()).exit_code == 2);

    const auto bad = temp_path("badvalue.cfg");
    write_file(bad, "band = 2:1/2\n");
    CHECK(run_cli("dband --n 12 --config " + bad.string()).exit_code == 2);
    std::filesystem::remove(bad);
}

TEST_CASE("cli --out moves the CSV out of stdout", "[cli]") {
    const auto out = temp_path("dband.csv");
    const RunResult r = run_cli("dband --n 12 --out " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());

    std::ifstream in(out);
    REQUIRE(in.good());
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    CHECK(text == "n,value\n12,2\n");
    std::filesystem::remove(out);
}

TEST_CASE("cli reads ZETABAND_THREADS when --threads is absent", "[cli]") {
    const std::string base = "delta-scan --lo 100 --hi 100000 --points 24";
    const RunResult flag = run_cli(base + " --threads 1");
    const RunResult env = run_cli(base, "ZETABAND_THREADS=7 ");
    CHECK(flag.exit_code == 0);
    CHECK(env.exit_code == 0);
    CHECK_FALSE(flag.out.empty());
    CHECK(env.out == flag.out);
}

TEST_CASE("cli scan output does not depend on the thread count", "[cli]") {
    const RunResult d1 =
        run_cli("delta-scan --lo 100 --hi 100000 --points 24 --threads 1");
    const RunResult d8 =
        run_cli("delta-scan --lo 100 --hi 100000 --points 24 --threads 8");
    CHECK(d1.exit_code == 0);
    CHECK(d8.exit_code == 0);
    CHECK_FALSE(d1.out.empty());
    CHECK(d1.out == d8.out);

    const RunResult p1 =
        run_cli("pyth-scan --lo 100 --hi 100000 --points 20 --threads 1");
    const RunResult p8 =
        run_cli("pyth-scan --lo 100 --hi 100000 --points 20 --threads 8");
    CHECK(p1.exit_code == 0);
    CHECK(p8.exit_code == 0);
    CHECK_FALSE(p1.out.empty());
    CHECK(p1.out == p8.out);
}
