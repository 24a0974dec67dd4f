#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zetaband/divisors.hpp"
#include "zetaband/errors.hpp"
#include "zetaband/fitting.hpp"
#include "zetaband/parallel.hpp"
#include "zetaband/rational.hpp"
#include "zetaband/sawtooth.hpp"

namespace zetaband {

/* Main-term constants of D(x) = c1*x + c2*sqrt(x) + Delta(x):
     c1 = (log beta - log alpha) / 2
     c2 = (1/sqrt(p2*q2) - 1/sqrt(p1*q1)) / 2
   with alpha = p1/q1, beta = p2/q2 in lowest terms. */
struct MainTerms {
    double c1 = 0.0;
    double c2 = 0.0;
};

inline MainTerms main_constants(const Band& band) {
    MainTerms mt;
    mt.c1 = 0.5 * (std::log(band.beta().to_double()) - std::log(band.alpha().to_double()));
    const double pq1 = static_cast<double>(band.p1()) * static_cast<double>(band.q1());
    const double pq2 = static_cast<double>(band.p2()) * static_cast<double>(band.q2());
    mt.c2 = 0.5 * (1.0 / std::sqrt(pq2) - 1.0 / std::sqrt(pq1));
    return mt;
}

namespace detail {

inline std::uint64_t checked_floor_u64(double x, const char* ctx) {
    if (!std::isfinite(x) || x < 1.0) throw DomainError(std::string(ctx) + ": need x >= 1");
    if (x >= 9.007199254740992e15)  // 2^53: beyond this floor(x) is not exact
        throw DomainError(std::string(ctx) + ": x too large for exact truncation");
    return static_cast<std::uint64_t>(std::floor(x));
}

/* Largest l with alpha*l^2 < n (exact). */
inline std::uint64_t generator_bound(std::uint64_t n, const Band& band) {
    const double approx = std::sqrt(static_cast<double>(n) / band.alpha().to_double());
    auto ok = [&](std::uint64_t l) {  // alpha*l*l < n
        return static_cast<i128>(band.p1()) * static_cast<i128>(l) * static_cast<i128>(l) <
               static_cast<i128>(band.q1()) * static_cast<i128>(n);
    };
    std::uint64_t l = approx < 1.0 ? 0 : static_cast<std::uint64_t>(approx);
    while (l > 0 && !ok(l)) --l;
    while (ok(l + 1)) ++l;
    return l;
}

} // namespace detail

/* D(x) = sum_{n<=x} d_band(n) in O(sqrt(x)) generator strides:
   for each l, the admissible k are (floor(alpha*l), min(floor(beta*l), floor(x/l))]. */
inline std::uint64_t summatory_fast(double x, const Band& band) {
    const std::uint64_t nx = detail::checked_floor_u64(x, "summatory_fast");
    const std::uint64_t l_max = detail::generator_bound(nx, band);
    std::uint64_t total = 0;
    for (std::uint64_t l = 1; l <= l_max; ++l) {
        const auto ll = static_cast<std::int64_t>(l);
        const std::int64_t lo = band.alpha().floor_mul(ll);
        const std::int64_t hi =
            std::min<std::int64_t>(band.beta().floor_mul(ll),
                                   static_cast<std::int64_t>(nx / l));
        if (hi > lo) total += static_cast<std::uint64_t>(hi - lo);
    }
    return total;
}

/* Same sum by sieving fixed-size windows; the independent cross-check. */
inline std::uint64_t summatory_bruteforce(double x, const Band& band,
                                          std::uint64_t window = (1ull << 22)) {
    const std::uint64_t nx = detail::checked_floor_u64(x, "summatory_bruteforce");
    std::uint64_t total = 0;
    for (std::uint64_t lo = 1; lo <= nx; lo += window) {
        const std::uint64_t hi = std::min(nx, lo + window - 1);
        for (std::uint32_t v : sieve_d_band(lo, hi, band)) total += v;
    }
    return total;
}

/* Cumulative D at every checkpoint in xs (ascending) with one sieve sweep. */
inline std::vector<std::uint64_t> summatory_bruteforce_checkpoints(
    const std::vector<double>& xs, const Band& band, std::uint64_t window = (1ull << 22)) {
    std::vector<std::uint64_t> marks(xs.size());
    std::vector<std::uint64_t> targets(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        targets[i] = detail::checked_floor_u64(xs[i], "summatory_bruteforce_checkpoints");
        if (i > 0 && targets[i] < targets[i - 1])
            throw DomainError("summatory_bruteforce_checkpoints: xs must be ascending");
    }
    if (xs.empty()) return marks;
    std::uint64_t total = 0;
    std::size_t next = 0;
    const std::uint64_t nx = targets.back();
    for (std::uint64_t lo = 1; lo <= nx && next < targets.size(); lo += window) {
        const std::uint64_t hi = std::min(nx, lo + window - 1);
        const auto table = sieve_d_band(lo, hi, band);
        for (std::uint64_t n = lo; n <= hi; ++n) {
            total += table[n - lo];
            while (next < targets.size() && targets[next] == n) marks[next++] = total;
        }
    }
    while (next < targets.size()) marks[next++] = total;  // targets below 1 cannot occur
    return marks;
}

/* Delta(x) = D(x) - c1*x - c2*sqrt(x). The main terms are combined in extended
   precision: D grows like c1*x while Delta is ~ x^(1/3), so naive subtraction
   at x ~ 1e9 would otherwise cost six digits. */
inline double delta(double x, const Band& band) {
    const std::uint64_t d = summatory_fast(x, band);
    const MainTerms mt = main_constants(band);
    const long double main = static_cast<long double>(mt.c1) * static_cast<long double>(x) +
                             static_cast<long double>(mt.c2) *
                                 std::sqrt(static_cast<long double>(x));
    return static_cast<double>(static_cast<long double>(d) - main);
}

/* The sawtooth representation of the same error term:
     Delta(x) ~ -sum_{sqrt(x/beta) < l <= sqrt(x/alpha)} psi(x/l),
   which matches delta() up to a band-dependent bounded difference. */
inline double delta_psi_form(double x, const Band& band) {
    if (!std::isfinite(x) || x < 1.0) throw DomainError("delta_psi_form: need x >= 1");
    /* l > sqrt(x/beta)  <=>  p2*l^2 > q2*x ; l <= sqrt(x/alpha)  <=>  p1*l^2 <= q1*x */
    auto above_lo = [&](std::uint64_t l) {
        return static_cast<long double>(band.p2()) * l * l >
               static_cast<long double>(band.q2()) * x;
    };
    auto within_hi = [&](std::uint64_t l) {
        return static_cast<long double>(band.p1()) * l * l <=
               static_cast<long double>(band.q1()) * x;
    };
    std::uint64_t l = static_cast<std::uint64_t>(
        std::sqrt(x / band.beta().to_double()));
    while (l > 0 && above_lo(l)) --l;
    while (!above_lo(l + 1)) ++l;
    ++l;  // first generator strictly above sqrt(x/beta)
    double acc = 0.0, comp = 0.0;
    for (; within_hi(l); ++l) {
        /* Kahan update: the terms are O(1) but the count is O(sqrt(x)). */
        const double y = -psi(x / static_cast<double>(l)) - comp;
        const double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
    }
    return acc;
}

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_ratio = 0.0;  // max normalized |error|; scale fixed by the scan
    std::size_t sample_count = 0;
};

/* OLS of log|Delta| against log x over a geometric grid. Points with
   |Delta| < 1e-9 carry no information about the exponent and are skipped. */
inline ExponentFit exponent_fit(const std::vector<double>& xs, const Band& band,
                                unsigned threads = 0) {
    if (xs.size() < 20) throw DomainError("exponent_fit: need at least 20 grid points");
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (!(*lo > 0.0) || *hi / *lo < 1e3)
        throw DomainError("exponent_fit: grid must span at least three decades");
    std::vector<double> deltas(xs.size());
    parallel_for(xs.size(), threads, [&](std::size_t i) { deltas[i] = delta(xs[i], band); });
    std::vector<double> lx, ly;
    ExponentFit fit;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fit.max_ratio = std::max(fit.max_ratio, std::abs(deltas[i]) / std::cbrt(xs[i]));
        if (std::abs(deltas[i]) < 1e-9) continue;
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(std::abs(deltas[i])));
    }
    if (lx.size() < 2)
        throw FitError("exponent_fit: all |Delta| below threshold, nothing to fit");
    const LineFit line = ols_fit(lx, ly);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.sample_count = lx.size();
    return fit;
}

} // namespace zetaband
