#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "zetaband/errors.hpp"
#include "zetaband/fitting.hpp"
#include "zetaband/summatory.hpp"

using namespace zetaband;

namespace {

const Band kHalfTwo(Rational(1, 2), Rational(2));
const Band kOneTwo(Rational(1), Rational(2));

} // namespace

TEST_CASE("main constants pinned per band") {
    const MainTerms a = main_constants(kHalfTwo);
    REQUIRE(a.c1 == Catch::Approx(std::log(2.0)).epsilon(1e-14));
    REQUIRE(a.c2 == 0.0);
    const MainTerms b = main_constants(kOneTwo);
    REQUIRE(b.c1 == Catch::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
    REQUIRE(b.c2 == Catch::Approx(0.5 * (1.0 / std::sqrt(2.0) - 1.0)).epsilon(1e-14));
}

TEST_CASE("summatory pinned values") {
    REQUIRE(summatory_bruteforce(12, kHalfTwo) == 9);
    REQUIRE(summatory_bruteforce(1, kHalfTwo) == 1);
    /* d(1) + d(2) + d(3) = 1 + 1 + 0 for this band. */
    REQUIRE(summatory_bruteforce(3.7, kHalfTwo) == 2);
    REQUIRE(summatory_fast(12, kHalfTwo) == 9);
    REQUIRE(summatory_fast(1, kHalfTwo) == 1);
    REQUIRE(summatory_fast(3.7, kHalfTwo) == 2);
    REQUIRE_THROWS_AS(summatory_fast(0.5, kHalfTwo), DomainError);
}

TEST_CASE("fast equals brute force on a dense sweep") {
    const Band bands[] = {kHalfTwo, kOneTwo, Band(Rational(2), Rational(3)),
                          Band(Rational(1, 3), Rational(3))};
    for (const Band& band : bands) {
        std::vector<double> xs(20000);
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(i + 1);
        const auto brute = summatory_bruteforce_checkpoints(xs, band);
        for (std::size_t i = 0; i < xs.size(); ++i)
            REQUIRE(summatory_fast(xs[i], band) == brute[i]);
    }
}

TEST_CASE("fast equals brute force at random large x") {
    std::mt19937_64 rng(271828182);
    std::uniform_int_distribution<std::uint64_t> pick(1, 10'000'000);
    std::vector<double> xs(100);
    for (auto& x : xs) x = static_cast<double>(pick(rng));
    std::sort(xs.begin(), xs.end());
    const auto brute = summatory_bruteforce_checkpoints(xs, kHalfTwo);
    for (std::size_t i = 0; i < xs.size(); ++i)
        REQUIRE(summatory_fast(xs[i], kHalfTwo) == brute[i]);
}

TEST_CASE("delta pinned values") {
    REQUIRE(delta(12, kHalfTwo) ==
            Catch::Approx(9.0 - 12.0 * std::log(2.0)).margin(1e-9));
    REQUIRE(delta(1, kHalfTwo) ==
            Catch::Approx(1.0 - std::log(2.0)).margin(1e-12));
    const double v = delta(1e6, kHalfTwo);
    REQUIRE(std::fabs(v) <= 100.0 * std::cbrt(1e6));
}

TEST_CASE("delta_psi_form pinned values") {
    REQUIRE(delta_psi_form(12, kHalfTwo) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(delta_psi_form(1, kHalfTwo) == Catch::Approx(0.5).margin(1e-12));
    /* Band tight enough that no integer l falls in the range. */
    const Band tight(Rational(101, 100), Rational(51, 50));
    REQUIRE(delta_psi_form(10, tight) == 0.0);
}

TEST_CASE("delta and its psi form stay within a bounded gap") {
    const auto xs = geometric_grid(1e2, 1e6, 24);
    for (double x : xs)
        REQUIRE(std::fabs(delta(x, kHalfTwo) - delta_psi_form(x, kHalfTwo)) <= 10.0);
}

TEST_CASE("delta decreases deterministically between integers") {
    const MainTerms mt = main_constants(kOneTwo);
    for (std::uint64_t n : {10ull, 137ull, 5000ull, 99991ull}) {
        const double x = static_cast<double>(n);
        const double expect =
            -mt.c1 * 0.5 - mt.c2 * (std::sqrt(x + 0.5) - std::sqrt(x));
        REQUIRE(delta(x + 0.5, kOneTwo) - delta(x, kOneTwo) ==
                Catch::Approx(expect).margin(1e-9));
    }
}

TEST_CASE("exponent_fit preconditions") {
    REQUIRE_THROWS_AS(exponent_fit({1e4}, kHalfTwo), DomainError);
    std::vector<double> nospan(25, 100.5);
    for (std::size_t i = 0; i < nospan.size(); ++i) nospan[i] += static_cast<double>(i);
    REQUIRE_THROWS_AS(exponent_fit(nospan, kHalfTwo), DomainError);
}

TEST_CASE("exponent_fit on a modest grid reports a sublinear slope") {
    const auto xs = geometric_grid(1e3, 1e7, 30);
    const ExponentFit fit = exponent_fit(xs, kHalfTwo);
    REQUIRE(fit.sample_count >= 20);
    REQUIRE(fit.slope < 0.45);
    REQUIRE(fit.max_ratio < 10.0);
}

TEST_CASE("ols_fit recovers exact lines and rejects degenerate input") {
    const std::vector<double> x{1, 2, 3, 4}, y{3, 5, 7, 9};
    const LineFit f = ols_fit(x, y);
    REQUIRE(f.slope == Catch::Approx(2.0).epsilon(1e-12));
    REQUIRE(f.intercept == Catch::Approx(1.0).epsilon(1e-12));
    REQUIRE_THROWS_AS(ols_fit({1.0}, {2.0}), FitError);
    REQUIRE_THROWS_AS(ols_fit({1.0, 1.0}, {2.0, 3.0}), FitError);
    REQUIRE_THROWS_AS(ols_fit({1.0, 2.0}, {2.0}), DomainError);
}

TEST_CASE("geometric_grid spans the range with half-integer offsets") {
    const auto xs = geometric_grid(100, 10000, 21);
    REQUIRE(xs.size() == 21);
    REQUIRE(xs.front() == 100.5);
    REQUIRE(xs.back() >= 9999.5);
    REQUIRE(xs.back() <= 10000.5);
    for (double x : xs) REQUIRE(x - std::floor(x) == 0.5);
    REQUIRE_THROWS_AS(geometric_grid(0, 10, 5), DomainError);
    REQUIRE_THROWS_AS(geometric_grid(10, 5, 5), DomainError);
    REQUIRE_THROWS_AS(geometric_grid(1, 10, 1), DomainError);
}
