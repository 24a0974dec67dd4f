#pragma once

#include <cmath>
#include <complex>

#include "zetaband/errors.hpp"
#include "zetaband/sawtooth.hpp"

namespace zetaband {

using Complex = std::complex<double>;

namespace detail {

/* B_2, B_4, ..., B_24. Twelve correction terms keep log_gamma at ~1e-17
   relative error once the argument is promoted to |z| >= 12. */
inline constexpr double kBernoulliEven[12] = {
    1.0 / 6.0,        -1.0 / 30.0,      1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0,  7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0};

/* log(sin(pi z)) modulo 2*pi*i shifts (harmless once exponentiated). The
   |Im| > 16 branches work in the log domain so e^{pi|y|} never overflows. */
inline Complex log_sin_pi(Complex z) {
    const Complex w = kPi * z;
    const double y = w.imag();
    if (std::fabs(y) <= 16.0) {
        const Complex s = std::sin(w);
        if (s == Complex(0.0, 0.0))
            throw PoleError("log_sin_pi: sin(pi z) = 0", z.real());
        return std::log(s);
    }
    const Complex i(0.0, 1.0);
    if (y > 0.0) {  // sin w = (i/2) e^{-iw} (1 - e^{2iw}),  |e^{2iw}| = e^{-2y}
        return -i * w + Complex(-std::log(2.0), kPi / 2.0) +
               std::log(Complex(1.0, 0.0) - std::exp(2.0 * i * w));
    }
    return i * w - Complex(std::log(2.0), kPi / 2.0) +
           std::log(Complex(1.0, 0.0) - std::exp(-2.0 * i * w));
}

/* Stirling series, valid after promoting the argument to |z| >= 12. */
inline Complex log_gamma_positive(Complex z) {
    Complex shift(0.0, 0.0);
    while (std::abs(z) < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex series(0.0, 0.0);
    Complex power = inv;  // z^{1-2k} for k = 1, 2, ...
    for (int k = 1; k <= 12; ++k) {
        series += kBernoulliEven[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * power;
        power *= inv2;
    }
    const Complex half_log_two_pi(0.9189385332046727417803297, 0.0);
    return (z - 0.5) * std::log(z) - z + half_log_two_pi + series - shift;
}

} // namespace detail

/* Principal-branch-compatible log Gamma: Stirling on Re z >= 0.5, reflection
   otherwise. The imaginary part may differ from the principal branch by
   multiples of 2*pi; every consumer exponentiates. */
inline Complex log_gamma(Complex z) {
    if (z.real() >= 0.5) return detail::log_gamma_positive(z);
    if (z.imag() == 0.0 && z.real() == std::rint(z.real()))
        throw PoleError("log_gamma: nonpositive integer", z.real());
    const double log_pi = 1.1447298858494001741434273;
    return Complex(log_pi, 0.0) - detail::log_sin_pi(z) -
           detail::log_gamma_positive(1.0 - z);
}

namespace detail {

/* First-order stationary form (2pi/t)^{s-1/2} e^{i(t+pi/4)}; accurate to
   O(1/t) for t > 0. Kept as a cross-check for chi, never used to compute. */
inline Complex chi_asymptotic(Complex s) {
    const double t = s.imag();
    if (!(t > 0.0)) throw DomainError("chi_asymptotic: require t > 0");
    const Complex base = std::pow(Complex(kTwoPi / t, 0.0), s - 0.5);
    return base * std::exp(Complex(0.0, t + kPi / 4.0));
}

} // namespace detail

/* chi(s) = (2 pi)^s / (2 Gamma(s) cos(pi s / 2)), the ratio factor in the
   functional equation. Poles at positive odd integers; at integers <= 0 the
   Gamma/cos combination is singular and the input is rejected. */
inline Complex chi(Complex s) {
    if (s.imag() == 0.0 && s.real() == std::rint(s.real())) {
        const auto k = static_cast<long long>(std::rint(s.real()));
        if (k <= 0 || (k % 2 != 0))
            throw PoleError("chi: singular at integer s", s.real());
    }
    /* cos(pi s/2) = sin(pi (s+1)/2) */
    const Complex log_cos = detail::log_sin_pi(0.5 * (s + 1.0));
    const double log_two_pi = 1.8378770664093454835606594;
    const Complex log_chi =
        s * log_two_pi - std::log(2.0) - log_gamma(s) - log_cos;
    return std::exp(log_chi);
}

} // namespace zetaband
