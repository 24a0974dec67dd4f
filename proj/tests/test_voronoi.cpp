#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "zetaband/divisors.hpp"
#include "zetaband/errors.hpp"
#include "zetaband/fitting.hpp"
#include "zetaband/summatory.hpp"
#include "zetaband/voronoi.hpp"

using namespace zetaband;

namespace {

const Band kHalfTwo(Rational(1, 2), Rational(2));

} // namespace

TEST_CASE("coefficient table agrees with the weighted divisor count") {
    const std::uint64_t H = 16;
    const CoefficientTable table(kHalfTwo, H);
    REQUIRE(table.n_max() == 512);

    std::map<std::uint32_t, CoefficientTable::Entry> by_n;
    for (const auto& e : table.entries()) by_n[e.n] = e;

    for (std::uint64_t n = 1; n <= table.n_max(); ++n) {
        const HalfInt w = d_band_weighted(n, kHalfTwo, H);
        const auto it = by_n.find(static_cast<std::uint32_t>(n));
        if (w.twice == 0) {
            REQUIRE(it == by_n.end());
            continue;
        }
        REQUIRE(it != by_n.end());
        REQUIRE(it->second.twice == w.twice);
        REQUIRE(it->second.amp ==
                Catch::Approx(w.value() * std::pow(static_cast<double>(n), -0.75))
                    .epsilon(1e-14));
    }
}

TEST_CASE("coefficient table range and guards") {
    const CoefficientTable narrow(Band(Rational(2), Rational(3)), 2);
    REQUIRE(narrow.n_max() == 12);
    for (const auto& e : narrow.entries()) REQUIRE(e.n <= 12);

    REQUIRE_THROWS_AS(CoefficientTable(kHalfTwo, 1), DomainError);
    /* beta * H^2 = 2e8 overshoots the term cap. */
    REQUIRE_THROWS_AS(CoefficientTable(kHalfTwo, 10000), ResourceError);
}

TEST_CASE("series value is even in the phase sign") {
    const CoefficientTable table(kHalfTwo, 32);
    for (double x : {1.0, 12.0, 997.25, 123456.5}) {
        REQUIRE(detail::voronoi_sum(table, x, 1.0) ==
                detail::voronoi_sum(table, x, -1.0));
    }
}

TEST_CASE("truncated series lands near the exact error term") {
    const double x = 12.0;
    const double m = voronoi_main(x, 64, kHalfTwo);
    REQUIRE(std::fabs(delta(x, kHalfTwo) - m) <= 3.0);
    REQUIRE_THROWS_AS(voronoi_main(0.5, 64, kHalfTwo), DomainError);
}

TEST_CASE("residual_scan preconditions and record layout") {
    REQUIRE_THROWS_AS(residual_scan({}, 16, kHalfTwo), DomainError);
    REQUIRE_THROWS_AS(residual_scan({0.5}, 16, kHalfTwo), DomainError);

    const auto s = residual_scan({1.0}, 2, kHalfTwo);
    REQUIRE(s.points.size() == 1);
    const auto& c = s.points.front();
    REQUIRE(c.x == 1.0);
    REQUIRE(c.H == 2);
    REQUIRE(c.delta_exact == Catch::Approx(delta(1.0, kHalfTwo)).margin(1e-15));
    REQUIRE(c.residual == c.delta_exact - c.m_value);
    REQUIRE(s.max_abs_residual == std::fabs(c.residual));
}

TEST_CASE("doubling H moves the series value by at most a log factor") {
    const auto xs = geometric_grid(1e3, 1e4, 12);
    for (std::uint64_t H : {16ull, 32ull, 64ull}) {
        const CoefficientTable lo(kHalfTwo, H), hi(kHalfTwo, 2 * H);
        for (double x : xs) {
            const double diff = std::fabs(voronoi_main(x, hi) - voronoi_main(x, lo));
            REQUIRE(diff <= 1.0 + std::log(static_cast<double>(H)));
        }
    }
}

TEST_CASE("residual RMS decays through an H ladder") {
    const auto xs = geometric_grid(1e3, 1e4, 20);
    double prev = -1.0, last = 0.0, rms_delta = 0.0;
    for (std::uint64_t H : {16ull, 64ull, 256ull, 1024ull}) {
        const auto s = residual_scan(xs, H, kHalfTwo);
        if (prev >= 0.0) REQUIRE(s.rms_residual <= 1.1 * prev);
        prev = s.rms_residual;
        last = s.rms_residual;
        rms_delta = s.rms_delta;
    }
    REQUIRE(last <= 0.3 * rms_delta);
}

TEST_CASE("weight mean value stays within a few multiples of its envelope") {
    const GMeanValueResult one = g_mean_value_check(1.0, 2.0);
    REQUIRE(one.integral == 1.0);
    REQUIRE(one.bound == Catch::Approx(std::log(2.0) / 2.0).epsilon(1e-14));

    /* Closed form per unit period: (2 + 2*log(H/2)) / H. */
    const GMeanValueResult mid = g_mean_value_check(10.0, 1e3);
    REQUIRE(mid.integral ==
            Catch::Approx(10.0 * (2.0 + 2.0 * std::log(500.0)) / 1e3).epsilon(0.01));

    const GMeanValueResult fine = g_mean_value_check(1.0, 1e6);
    REQUIRE(fine.integral ==
            Catch::Approx((2.0 + 2.0 * std::log(5e5)) / 1e6).epsilon(0.01));

    for (double N : {1.0, 10.0, 1e3}) {
        for (double H : {2.0, 1e2, 1e4}) {
            const GMeanValueResult r = g_mean_value_check(N, H);
            REQUIRE(r.integral <= 4.0 * r.bound);
        }
    }

    REQUIRE_THROWS_AS(g_mean_value_check(0.5, 16.0), DomainError);
    REQUIRE_THROWS_AS(g_mean_value_check(10.0, 1.5), DomainError);
}
