#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "zetaband/errors.hpp"
#include "zetaband/sawtooth.hpp"

using namespace zetaband;

TEST_CASE("psi matches the centered sawtooth") {
    REQUIRE(psi(0.5) == 0.0);
    REQUIRE(psi(3.0) == -0.5);
    REQUIRE(psi(2.75) == 0.25);
    REQUIRE(psi(-0.25) == 0.25);
    REQUIRE_THROWS_AS(psi(std::nan("")), DomainError);
}

TEST_CASE("psi is 1-periodic and lands in [-1/2, 1/2)") {
    for (int i = 0; i <= 1000; ++i) {
        const double u = -3.0 + 6.0 * i / 1000.0;
        REQUIRE(psi(u + 1.0) == Catch::Approx(psi(u)).margin(1e-12));
        REQUIRE(psi(u) >= -0.5);
        REQUIRE(psi(u) < 0.5);
    }
}

TEST_CASE("psi_fourier pinned values") {
    REQUIRE(std::fabs(psi_fourier(0.5, 10)) < 1e-12);
    REQUIRE(psi_fourier(0.25, 2) ==
            Catch::Approx(-1.0 / kPi).epsilon(1e-12));
    REQUIRE_THROWS_AS(psi_fourier(0.3, 1.0), DomainError);
}

TEST_CASE("psi_fourier approaches psi under the G envelope") {
    /* One constant C <= 2 covers every H on a uniform grid of [0, 1). */
    for (double H : {4.0, 16.0, 64.0, 256.0}) {
        for (int i = 0; i < 10000; ++i) {
            const double u = i / 10000.0;
            const double diff = std::fabs(psi_fourier(u, H) - psi(u));
            REQUIRE(diff <= 2.0 * g_weight(u, H));
        }
    }
}

TEST_CASE("g_weight pinned values") {
    REQUIRE(g_weight(0.5, 10) == Catch::Approx(0.2));
    REQUIRE(g_weight(0.05, 10) == 1.0);
    REQUIRE(g_weight(7.0, 100) == 1.0);
    REQUIRE(g_weight(0.25, 2) == 1.0);
    REQUIRE_THROWS_AS(g_weight(0.3, 1.5), DomainError);
}

TEST_CASE("g_weight is symmetric about half-integers and periodic") {
    for (int i = 1; i < 100; ++i) {
        const double u = i / 100.0;
        REQUIRE(g_weight(u, 64) == Catch::Approx(g_weight(1.0 - u, 64)));
        REQUIRE(g_weight(u, 64) == Catch::Approx(g_weight(u + 5.0, 64)));
    }
}

TEST_CASE("pairwise_sum matches exact totals") {
    std::vector<double> ones(1 << 12, 1.0);
    REQUIRE(detail::pairwise_sum(ones.data(), ones.size()) ==
            static_cast<double>(ones.size()));
    std::vector<double> ramp(1000);
    for (std::size_t i = 0; i < ramp.size(); ++i)
        ramp[i] = static_cast<double>(i + 1);
    REQUIRE(detail::pairwise_sum(ramp.data(), ramp.size()) == 500500.0);
}
