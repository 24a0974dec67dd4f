#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include "zetaband/errors.hpp"

namespace zetaband {

namespace detail {

using i128 = __int128;
using u128 = unsigned __int128;

inline i128 mul_checked(std::int64_t a, std::int64_t b) {
    /* int64 * int64 always fits in i128; the check happens when narrowing. */
    return static_cast<i128>(a) * static_cast<i128>(b);
}

inline std::int64_t narrow_checked(i128 v, const char* ctx) {
    if (v > static_cast<i128>(INT64_MAX) || v < static_cast<i128>(INT64_MIN))
        throw OverflowError(std::string("rational arithmetic overflow in ") + ctx);
    return static_cast<std::int64_t>(v);
}

inline i128 add_checked_i128(i128 a, i128 b, const char* ctx) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError(std::string("rational arithmetic overflow in ") + ctx);
    return r;
}

inline i128 mul_checked_i128(i128 a, i128 b, const char* ctx) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError(std::string("rational arithmetic overflow in ") + ctx);
    return r;
}

} // namespace detail

/* Reduced fraction num/den with den > 0. All arithmetic is exact; any result
   that cannot be reduced back into int64 throws OverflowError instead of
   silently wrapping. */
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) {
        if (den_ == 0) throw DomainError("rational with zero denominator");
        normalize();
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    double to_double() const {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }

    Rational operator-() const { return Rational(-num_, den_, already_reduced{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        using namespace detail;
        i128 n = add_checked_i128(mul_checked(a.num_, b.den_),
                                  mul_checked(b.num_, a.den_), "+");
        i128 d = mul_checked(a.den_, b.den_);
        return from_i128(n, d, "+");
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        return a + (-b);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        using namespace detail;
        return from_i128(mul_checked(a.num_, b.num_), mul_checked(a.den_, b.den_), "*");
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        using namespace detail;
        if (b.num_ == 0) throw DomainError("rational division by zero");
        return from_i128(mul_checked(a.num_, b.den_), mul_checked(a.den_, b.num_), "/");
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;  // both reduced
    }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        using namespace detail;
        i128 lhs = mul_checked(a.num_, b.den_);
        i128 rhs = mul_checked(b.num_, a.den_);
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /* floor(this * k) for integer k >= 0, exact. */
    std::int64_t floor_mul(std::int64_t k) const {
        using namespace detail;
        i128 p = mul_checked(num_, k);
        i128 q = den_;
        i128 f = p / q;
        if (p % q != 0 && p < 0) --f;  // round toward -infinity
        return narrow_checked(f, "floor_mul");
    }

    /* Exact comparison of this * k against integer m: sign of (this*k - m). */
    int cmp_mul_vs(std::int64_t k, std::int64_t m) const {
        using namespace detail;
        i128 lhs = mul_checked(num_, k);
        i128 rhs = mul_checked(m, den_);
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    }

    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }

private:
    struct already_reduced {};
    Rational(std::int64_t n, std::int64_t d, already_reduced) : num_(n), den_(d) {}

    static Rational from_i128(detail::i128 n, detail::i128 d, const char* ctx) {
        if (d < 0) { n = -n; d = -d; }
        detail::i128 g = gcd_i128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        return Rational(detail::narrow_checked(n, ctx),
                        detail::narrow_checked(d, ctx), already_reduced{});
    }

    static detail::i128 gcd_i128(detail::i128 a, detail::i128 b) {
        while (b != 0) { detail::i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }

    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (den_ == 0) throw DomainError("rational with zero denominator");
    }

    std::int64_t num_;
    std::int64_t den_;
};

/* Open-below/closed-above band (alpha, beta] of slopes, 0 < alpha < beta.
   The lowest-terms numerators/denominators (p1/q1, p2/q2) enter the main-term
   constants, so they are exposed directly. */
class Band {
public:
    Band(Rational alpha, Rational beta) : alpha_(alpha), beta_(beta) {
        if (!(Rational(0) < alpha_) || !(alpha_ < beta_))
            throw DomainError("band requires 0 < alpha < beta, got " + alpha_.str() +
                              ":" + beta_.str());
    }

    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }

    std::int64_t p1() const { return alpha_.num(); }
    std::int64_t q1() const { return alpha_.den(); }
    std::int64_t p2() const { return beta_.num(); }
    std::int64_t q2() const { return beta_.den(); }

    std::string str() const { return alpha_.str() + ":" + beta_.str(); }

    friend bool operator==(const Band& a, const Band& b) {
        return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
    }

private:
    Rational alpha_;
    Rational beta_;
};

} // namespace zetaband
