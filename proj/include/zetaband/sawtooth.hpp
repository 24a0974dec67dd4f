#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "zetaband/errors.hpp"

namespace zetaband {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;

/* psi(u) = u - floor(u) - 1/2, the centered sawtooth. Range [-1/2, 1/2),
   psi(n) = -1/2 at integers. */
inline double psi(double u) {
    if (!std::isfinite(u)) throw DomainError("psi: non-finite argument");
    return u - std::floor(u) - 0.5;
}

namespace detail {

/* Pairwise (tree) reduction; keeps the rounding error of H ~ 1e6 sine terms
   near machine precision where a left fold would lose ~ sqrt(H) * eps. */
inline double pairwise_sum(const double* a, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += a[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(a, h) + pairwise_sum(a + h, n - h);
}

} // namespace detail

/* Truncated Fourier model of psi:
     psi_H(u) = -(1/pi) * sum_{h<=H} sin(2 pi h u) / h.
   Its deviation from psi(u) is controlled by g_weight(u, H). */
inline double psi_fourier(double u, double H) {
    if (!std::isfinite(u)) throw DomainError("psi_fourier: non-finite argument");
    if (!(H >= 2.0)) throw DomainError("psi_fourier: H must be >= 2");
    const auto count = static_cast<std::size_t>(std::floor(H));
    /* sin(2 pi h u) with h*u reduced to its fractional part first, so the
       sine argument never grows with h and no precision is shed. */
    const double frac = u - std::floor(u);
    std::vector<double> terms(count);
    for (std::size_t h = 1; h <= count; ++h) {
        double hu = static_cast<double>(h) * frac;
        hu -= std::floor(hu);
        terms[h - 1] = std::sin(kTwoPi * hu) / static_cast<double>(h);
    }
    return -detail::pairwise_sum(terms.data(), count) / kPi;
}

/* Envelope weight G(u,H) = min(1, 1/(H*||u||)), ||u|| = distance to the
   nearest integer. Defined as 1 exactly at integers (the min's first branch),
   which keeps the envelope usable on grids that touch integers. */
inline double g_weight(double u, double H) {
    if (!std::isfinite(u)) throw DomainError("g_weight: non-finite argument");
    if (!(H >= 2.0)) throw DomainError("g_weight: H must be >= 2");
    double frac = u - std::floor(u);
    double dist = frac < 0.5 ? frac : 1.0 - frac;
    if (dist <= 0.0) return 1.0;
    return std::min(1.0, 1.0 / (H * dist));
}

} // namespace zetaband
