#pragma once

#include <cmath>

namespace zetaband::detail {

/* Minimal double-double arithmetic for oscillatory phase evaluation.
   A value is hi + lo with |lo| <= ulp(hi)/2; ~31 significant digits. Only the
   operations needed to form (4*pi*sqrt(n*x) - pi/4) mod 2*pi are provided. */
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {  // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul_d(DD a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

/* sqrt of a dd value via one Newton step on the double estimate. */
inline DD dd_sqrt(DD a) {
    if (a.hi <= 0.0) return {0.0, 0.0};
    double s = std::sqrt(a.hi);
    DD s2 = two_prod(s, s);
    double err = ((a.hi - s2.hi) - s2.lo) + a.lo;
    return quick_two_sum(s, err / (2.0 * s));
}

inline constexpr double kDDTwoPiHi = 6.283185307179586476925286766559;
inline constexpr double kDDTwoPiLo = 2.4492935982947063545e-16;
inline constexpr double kDDFourPiHi = 12.566370614359172953850573533118;
inline constexpr double kDDFourPiLo = 4.8985871965894127090e-16;
inline constexpr double kDDQuarterPiHi = 0.78539816339744830961566084581988;
inline constexpr double kDDQuarterPiLo = 3.0616169978683830179e-17;

/* Reduce a dd phase into [-pi, pi]; the reduction count is sign-symmetric
   (round-half-even), so negating the input exactly negates the output. */
inline double dd_mod_two_pi(DD v) {
    double q = std::nearbyint(v.hi / kDDTwoPiHi);
    DD qp = two_prod(q, kDDTwoPiHi);
    qp.lo += q * kDDTwoPiLo;
    DD r = dd_add(v, DD{-qp.hi, -qp.lo});
    return r.hi + r.lo;
}

/* cos(4*pi*sqrt(n*x) + sign*pi/4) with the whole phase carried in dd. The
   plain-double route loses ~6 digits of phase at n*x ~ 1e18; this one does not.
   phase_sign lets callers negate every cosine argument; reduction and the
   final fabs are sign-symmetric, so the value is bit-identical either way. */
inline double cos_voronoi_phase(double n, double x, double sign_quarter_pi,
                                double phase_sign) {
    DD nx = two_prod(n, x);
    DD root = dd_sqrt(nx);
    DD phase = dd_mul(root, DD{kDDFourPiHi, kDDFourPiLo});
    phase = dd_add(phase, DD{sign_quarter_pi * kDDQuarterPiHi,
                             sign_quarter_pi * kDDQuarterPiLo});
    phase = dd_mul_d(phase, phase_sign);
    return std::cos(std::fabs(dd_mod_two_pi(phase)));
}

} // namespace zetaband::detail
