#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>

#include "zetaband/errors.hpp"
#include "zetaband/rational.hpp"

using zetaband::Band;
using zetaband::Rational;

TEST_CASE("rational stores lowest terms with positive denominator") {
    REQUIRE(Rational(6, 4) == Rational(3, 2));
    REQUIRE(Rational(-6, 4).num() == -3);
    REQUIRE(Rational(-6, 4).den() == 2);
    REQUIRE(Rational(6, -4).num() == -3);
    REQUIRE(Rational(6, -4).den() == 2);
    REQUIRE(Rational(0, 7).num() == 0);
    REQUIRE(Rational(0, 7).den() == 1);
    REQUIRE(Rational(5).den() == 1);
}

TEST_CASE("zero denominator is rejected") {
    REQUIRE_THROWS_AS(Rational(1, 0), zetaband::DomainError);
}

TEST_CASE("arithmetic is exact") {
    REQUIRE(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    REQUIRE(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
    REQUIRE(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    REQUIRE(Rational(1, 3) / Rational(3, 1) == Rational(1, 9));
    REQUIRE_THROWS_AS(Rational(1, 2) / Rational(0, 5), zetaband::DomainError);
}

TEST_CASE("product round-trips for random pairs") {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<std::int64_t> pick(1, 1'000'000);
    for (int i = 0; i < 1000; ++i) {
        const std::int64_t a = pick(rng), b = pick(rng);
        REQUIRE(Rational(a, b) * Rational(b, a) == Rational(1));
    }
}

TEST_CASE("ordering uses cross multiplication") {
    REQUIRE(Rational(1, 3) < Rational(2, 5));
    REQUIRE(Rational(-1, 2) < Rational(1, 3));
    REQUIRE(Rational(7, 3) > Rational(2, 1));
    /* Magnitudes where double rounding would tie. */
    const std::int64_t big = (1ll << 60) + 1;
    REQUIRE(Rational(big, 1ll << 60) > Rational(1));
}

TEST_CASE("floor_mul rounds toward minus infinity") {
    REQUIRE(Rational(1, 2).floor_mul(7) == 3);
    REQUIRE(Rational(1, 2).floor_mul(8) == 4);
    REQUIRE(Rational(2, 3).floor_mul(-5) == -4);
    REQUIRE(Rational(5).floor_mul(3) == 15);
    REQUIRE(Rational(-1, 3).floor_mul(1) == -1);
}

TEST_CASE("cmp_mul_vs reports the exact sign") {
    REQUIRE(Rational(1, 2).cmp_mul_vs(4, 2) == 0);
    REQUIRE(Rational(1, 2).cmp_mul_vs(5, 2) == 1);
    REQUIRE(Rational(1, 2).cmp_mul_vs(5, 3) == -1);
    /* Exactness at magnitudes where doubles cannot decide. k is odd, so
       k/2 truncates and half of k lands strictly above it. */
    const std::int64_t k = (1ll << 55) + 3;
    REQUIRE(Rational(1, 2).cmp_mul_vs(k, k / 2) == 1);
    REQUIRE(Rational(1, 2).cmp_mul_vs(k - 3, (k - 3) / 2) == 0);
}

TEST_CASE("results that leave int64 throw instead of wrapping") {
    const Rational huge(INT64_MAX, 1);
    REQUIRE_THROWS_AS(huge + huge, zetaband::OverflowError);
    REQUIRE_THROWS_AS(huge * Rational(2), zetaband::OverflowError);
    REQUIRE_THROWS_AS(huge.floor_mul(2), zetaband::OverflowError);
}

TEST_CASE("band validates 0 < alpha < beta") {
    const Band band(Rational(1, 2), Rational(2));
    REQUIRE(band.p1() == 1);
    REQUIRE(band.q1() == 2);
    REQUIRE(band.p2() == 2);
    REQUIRE(band.q2() == 1);
    REQUIRE(band.str() == "1/2:2");
    REQUIRE_THROWS_AS(Band(Rational(2), Rational(1, 2)), zetaband::DomainError);
    REQUIRE_THROWS_AS(Band(Rational(1), Rational(1)), zetaband::DomainError);
    REQUIRE_THROWS_AS(Band(Rational(0), Rational(1)), zetaband::DomainError);
    REQUIRE_THROWS_AS(Band(Rational(-1, 2), Rational(1)), zetaband::DomainError);
}
