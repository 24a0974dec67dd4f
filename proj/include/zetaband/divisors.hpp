#pragma once

#include <cstdint>
#include <vector>

#include "zetaband/errors.hpp"
#include "zetaband/rational.hpp"

namespace zetaband {

/* Counter that can hold exact half-integer values (boundary factorizations
   count 1/2). Stored as twice the value so equality stays exact. */
struct HalfInt {
    std::uint64_t twice = 0;
    double value() const { return 0.5 * static_cast<double>(twice); }
    bool is_integer() const { return (twice & 1u) == 0; }
    friend bool operator==(const HalfInt&, const HalfInt&) = default;
};

/* d(n): number of divisors, by trial division. */
inline std::uint64_t d_classic(std::uint64_t n) {
    if (n == 0) throw DomainError("d_classic: n must be >= 1");
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k * k <= n; ++k) {
        if (n % k == 0) count += (k * k == n) ? 1 : 2;
    }
    return count;
}

/* d_band(n) = #{(k,l) : n = k*l, alpha*l < k <= beta*l}. Both orientations of
   each divisor pair are tested; membership is decided by exact cross
   multiplication, never by floating point. */
inline std::uint64_t d_band(std::uint64_t n, const Band& band) {
    if (n == 0) throw DomainError("d_band: n must be >= 1");
    const auto in_band = [&](std::uint64_t k, std::uint64_t l) {
        /* alpha*l < k  <=>  p1*l < q1*k ; k <= beta*l  <=>  q2*k <= p2*l */
        const auto kk = static_cast<std::int64_t>(k);
        const auto ll = static_cast<std::int64_t>(l);
        return band.alpha().cmp_mul_vs(ll, kk) < 0 && band.beta().cmp_mul_vs(ll, kk) >= 0;
    };
    std::uint64_t count = 0;
    for (std::uint64_t a = 1; a * a <= n; ++a) {
        if (n % a != 0) continue;
        const std::uint64_t b = n / a;
        if (in_band(a, b)) ++count;
        if (a != b && in_band(b, a)) ++count;
    }
    return count;
}

/* Truncated, endpoint-halved variant
     d_band(n, H) = sum_{h<=H} sum''_{h*alpha <= k <= h*beta, h*k = n} 1,
   where sum'' counts a term 1/2 when k lands exactly on h*alpha or h*beta.
   Exact endpoint hits require h*alpha (resp. h*beta) to be an integer. */
inline HalfInt d_band_weighted(std::uint64_t n, const Band& band, std::uint64_t H) {
    if (n == 0) throw DomainError("d_band_weighted: n must be >= 1");
    if (H == 0) throw DomainError("d_band_weighted: H must be >= 1");
    HalfInt result;
    for (std::uint64_t h = 1; h * h <= n; ++h) {
        if (n % h != 0) continue;
        for (int swap = 0; swap < 2; ++swap) {
            const std::uint64_t hh = swap ? n / h : h;
            const std::uint64_t kk = swap ? h : n / h;
            if (swap && hh == kk) continue;  // square: same pair twice
            if (hh > H) continue;
            const auto hi = static_cast<std::int64_t>(hh);
            const auto ki = static_cast<std::int64_t>(kk);
            const int lo_cmp = band.alpha().cmp_mul_vs(hi, ki);  // sign of h*alpha - k
            const int hi_cmp = band.beta().cmp_mul_vs(hi, ki);   // sign of h*beta - k
            if (lo_cmp > 0 || hi_cmp < 0) continue;              // outside [h*alpha, h*beta]
            const bool on_edge = (lo_cmp == 0) || (hi_cmp == 0);
            result.twice += on_edge ? 1 : 2;
        }
    }
    return result;
}

/* r(n) = #{(d,l) : n = 2*d*l, d < l < 2*d}, the Pythagorean-perimeter
   multiplicity. Zero for odd n. */
inline std::uint64_t r_count(std::uint64_t n) {
    if (n == 0) throw DomainError("r_count: n must be >= 1");
    if (n % 2 != 0) return 0;
    const std::uint64_t m = n / 2;
    std::uint64_t count = 0;
    for (std::uint64_t d = 1; d * d <= m; ++d) {
        if (m % d != 0) continue;
        const std::uint64_t l = m / d;
        if (d < l && l < 2 * d) ++count;
    }
    return count;
}

/* Dense table of d_band(n) for n in [lo, hi], one pass per generator l.
   For fixed l the admissible k form the integer range
   (floor(alpha*l), floor(beta*l)] intersected with [ceil(lo/l), floor(hi/l)]. */
inline std::vector<std::uint32_t> sieve_d_band(std::uint64_t lo, std::uint64_t hi,
                                               const Band& band,
                                               std::uint64_t max_cells = (1ull << 31)) {
    if (lo == 0 || hi < lo) throw DomainError("sieve_d_band: need 1 <= lo <= hi");
    const std::uint64_t cells = hi - lo + 1;
    if (cells > max_cells)
        throw ResourceError("sieve_d_band: window of " + std::to_string(cells) +
                            " cells exceeds cap " + std::to_string(max_cells));
    std::vector<std::uint32_t> table(cells, 0);
    /* l bound: alpha*l^2 < hi, i.e. p1*l^2 < q1*hi. */
    for (std::uint64_t l = 1;; ++l) {
        const auto ll = static_cast<std::int64_t>(l);
        using detail::i128;
        const i128 al2 = static_cast<i128>(band.p1()) * ll * ll;
        if (al2 >= static_cast<i128>(band.q1()) * static_cast<i128>(hi)) break;
        std::uint64_t k_lo = static_cast<std::uint64_t>(band.alpha().floor_mul(ll)) + 1;
        std::uint64_t k_hi = static_cast<std::uint64_t>(band.beta().floor_mul(ll));
        const std::uint64_t k_min = (lo + l - 1) / l;
        const std::uint64_t k_max = hi / l;
        if (k_lo < k_min) k_lo = k_min;
        if (k_hi > k_max) k_hi = k_max;
        for (std::uint64_t k = k_lo; k <= k_hi; ++k) table[k * l - lo] += 1;
    }
    return table;
}

} // namespace zetaband
