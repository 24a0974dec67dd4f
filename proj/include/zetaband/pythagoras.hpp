#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "zetaband/divisors.hpp"
#include "zetaband/errors.hpp"
#include "zetaband/fitting.hpp"
#include "zetaband/parallel.hpp"
#include "zetaband/sawtooth.hpp"
#include "zetaband/summatory.hpp"

namespace zetaband {

/* Density of primitive perimeters: P(x) grows like kPerimeterDensity * x. */
inline const double kPerimeterDensity = std::log(2.0) / (kPi * kPi);

/* Conjectural error exponent for P(x) under the usual unproven hypothesis;
   reported beside fitted slopes, never asserted. */
inline constexpr double kLehmerConditionalExponent = 4.0 / 11.0;

inline constexpr std::uint64_t kTripleCap = 20'000'000;

/* Primitive Pythagorean triangle: a^2 + b^2 = c^2, a < b < c, gcd(a,b) = 1. */
struct PrimitiveTriple {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t perimeter() const { return a + b + c; }
};

struct CensusReport {
    double x = 0.0;
    std::uint64_t P = 0;
    double main = 0.0;   // kPerimeterDensity * x
    double error = 0.0;  // P - main
};

namespace detail {

/* Largest m with 2m(m+1) <= X, i.e. the largest generator that can appear. */
inline std::uint64_t max_generator(std::uint64_t X) {
    if (X < 12) return 1;
    auto m = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(X) / 2.0));
    while (2 * m * (m + 1) > X) --m;
    while (2 * (m + 1) * (m + 2) <= X) ++m;
    return m;
}

} // namespace detail

/* All primitive triples with perimeter <= perimeter_bound, generated from
   coprime m > n >= 1 of opposite parity: legs {m^2-n^2, 2mn} ordered,
   hypotenuse m^2+n^2, perimeter 2m(m+n). Sorted by (perimeter, short leg). */
inline std::vector<PrimitiveTriple> enumerate_primitive(
    double perimeter_bound, std::uint64_t max_triples = kTripleCap) {
    if (!(perimeter_bound >= 1.0))
        throw DomainError("enumerate_primitive: perimeter_bound must be >= 1");
    const std::uint64_t X = detail::checked_floor_u64(perimeter_bound, "enumerate_primitive");
    std::vector<PrimitiveTriple> out;
    const std::uint64_t m_max = detail::max_generator(X);
    for (std::uint64_t m = 2; m <= m_max; ++m) {
        for (std::uint64_t n = (m % 2 == 0) ? 1 : 2; n < m; n += 2) {
            if (2 * m * (m + n) > X) break;
            if (std::gcd(m, n) != 1) continue;
            if (out.size() == max_triples)
                throw ResourceError("enumerate_primitive: more than " +
                                    std::to_string(max_triples) + " triples");
            const std::uint64_t odd_leg = m * m - n * n, even_leg = 2 * m * n;
            PrimitiveTriple t;
            t.a = std::min(odd_leg, even_leg);
            t.b = std::max(odd_leg, even_leg);
            t.c = m * m + n * n;
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end(),
              [](const PrimitiveTriple& u, const PrimitiveTriple& v) {
                  const std::uint64_t pu = u.perimeter(), pv = v.perimeter();
                  return pu != pv ? pu < pv : u.a < v.a;
              });
    return out;
}

/* P(x): number of primitive triples with perimeter <= x, counted as (m,n)
   pairs without materializing triples. Generators are independent, so the
   per-m subtotals land in a fixed array and the total is thread-exact. */
inline std::uint64_t count_P(double x, unsigned threads = 0) {
    if (!(x >= 1.0)) throw DomainError("count_P: x must be >= 1");
    const std::uint64_t X = detail::checked_floor_u64(x, "pythagoras");
    const std::uint64_t m_max = detail::max_generator(X);
    if (m_max < 2) return 0;
    std::vector<std::uint64_t> per_m(m_max - 1, 0);
    parallel_for(per_m.size(), threads, [&](std::size_t i) {
        const std::uint64_t m = i + 2;
        std::uint64_t count = 0;
        for (std::uint64_t n = (m % 2 == 0) ? 1 : 2; n < m; n += 2) {
            if (2 * m * (m + n) > X) break;
            if (std::gcd(m, n) == 1) ++count;
        }
        per_m[i] = count;
    });
    std::uint64_t total = 0;
    for (std::uint64_t c : per_m) total += c;
    return total;
}

inline CensusReport census(double x, unsigned threads = 0) {
    CensusReport r;
    r.x = x;
    r.P = count_P(x, threads);
    r.main = kPerimeterDensity * x;
    r.error = static_cast<double>(r.P) - r.main;
    return r;
}

/* OLS of log|P(x) - main| against log x over a geometric grid, plus the
   largest error normalized by sqrt(x) * log x. Near-zero errors carry no
   exponent information and are skipped. */
inline ExponentFit lehmer_error_scan(const std::vector<double>& xs,
                                     unsigned threads = 0) {
    if (xs.size() < 20)
        throw DomainError("lehmer_error_scan: need at least 20 grid points");
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (!(*lo > 0.0) || *hi / *lo < 1e3)
        throw DomainError("lehmer_error_scan: grid must span at least three decades");
    std::vector<double> errs(xs.size());
    parallel_for(xs.size(), threads,
                 [&](std::size_t i) { errs[i] = census(xs[i]).error; });
    std::vector<double> lx, ly;
    ExponentFit fit;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        fit.max_ratio = std::max(
            fit.max_ratio, std::abs(errs[i]) / (std::sqrt(xs[i]) * std::log(xs[i])));
        if (std::abs(errs[i]) < 1e-9) continue;
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(std::abs(errs[i])));
    }
    if (lx.size() < 2)
        throw FitError("lehmer_error_scan: all errors below threshold, nothing to fit");
    const LineFit line = ols_fit(lx, ly);
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.sample_count = lx.size();
    return fit;
}

/* Perimeters are exactly the n = 2d(d+l) with l < d, so summing r_count over
   n <= x must equal the direct pair count. Both sides computed independently. */
inline std::pair<std::uint64_t, std::uint64_t> perimeter_r_crosscheck(double x) {
    if (!(x >= 1.0)) throw DomainError("perimeter_r_crosscheck: x must be >= 1");
    const std::uint64_t X = detail::checked_floor_u64(x, "pythagoras");
    std::uint64_t lhs = 0;
    for (std::uint64_t n = 1; n <= X; ++n) lhs += r_count(n);
    std::uint64_t rhs = 0;
    for (std::uint64_t d = 2; 2 * d * (d + 1) <= X; ++d) {
        const std::uint64_t reach = X / (2 * d);  // largest admissible d + l
        if (reach <= d) continue;
        rhs += std::min(d - 1, reach - d);
    }
    return {lhs, rhs};
}

} // namespace zetaband
