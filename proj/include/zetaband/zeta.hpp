#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "zetaband/divisors.hpp"
#include "zetaband/errors.hpp"
#include "zetaband/gamma.hpp"
#include "zetaband/parallel.hpp"
#include "zetaband/rational.hpp"
#include "zetaband/summatory.hpp"

namespace zetaband {

/* N: cutoff of the explicit head sum. M: starting horizon for the exact
   unit-interval integration; evaluation may extend it to certify the tail. */
struct ContinuationConfig {
    std::uint64_t N = 64;
    std::uint64_t M = 65536;
    double tail_tol = 1e-6;
};

inline void validate(const ContinuationConfig& cfg) {
    if (cfg.N < 1) throw DomainError("ContinuationConfig: N must be >= 1");
    if (cfg.M < cfg.N) throw DomainError("ContinuationConfig: M must be >= N");
    if (!(cfg.tail_tol > 0.0) || cfg.tail_tol > 1e-3)
        throw DomainError("ContinuationConfig: tail_tol must be in (0, 1e-3]");
}

inline constexpr double kPoleRadius = 1e-3;
inline constexpr double kSigmaFloor = 1.0 / 3.0 + 0.01;

/* Empirically pinned envelope constants (margin tests hold them honest):
     |Delta(u)|           <= kDeltaPointwiseK * u^{1/3}
     |int_0^v Delta - c0 v| <= kDeltaIntegralK * v^{3/4}, |c0| <= kDeltaMeanK
   for u, v >= kCertifyFloor. The tail of s*int Delta(u) u^{-s-1} du is
   certified by the cheaper of the pointwise and integrated-smoothness routes. */
inline constexpr double kDeltaPointwiseK = 4.0;
inline constexpr double kDeltaMeanK = 2.0;
inline constexpr double kDeltaIntegralK = 6.0;
inline constexpr std::uint64_t kCertifyFloor = 4096;
inline constexpr std::uint64_t kHorizonCap = 300'000'000;
inline constexpr std::uint64_t kOscHorizonFloor = 262'144;

struct EvalInfo {
    std::uint64_t N = 0;
    std::uint64_t M = 0;
    double tail_bound = 0.0;
    bool certified = false;
};

namespace detail {

inline double certified_tail_bound(Complex s, std::uint64_t M) {
    const double sigma = s.real();
    const double Md = static_cast<double>(M);
    const double pointwise = std::abs(s) * kDeltaPointwiseK *
                             std::pow(Md, 1.0 / 3.0 - sigma) / (sigma - 1.0 / 3.0);
    const double integrated =
        kDeltaMeanK * std::pow(Md, -sigma) +
        2.0 * kDeltaIntegralK * std::abs(s) * std::abs(s + 1.0) *
            std::pow(Md, -sigma - 0.25) / (sigma + 0.25);
    return std::min(pointwise, integrated);
}

/* Past every stationary point of the phase mix: all u* = t^2/(4 pi^2 n) lie
   below M/3, so the remaining tail is non-stationary and empirically below
   this envelope. Reported, never certified. */
inline std::uint64_t oscillatory_horizon(double t) {
    const double scaled = 3.0 * (t / kTwoPi) * (t / kTwoPi);
    const auto wanted = static_cast<std::uint64_t>(std::ceil(scaled));
    return std::max(kOscHorizonFloor, wanted);
}

inline double horizon_tail_estimate(Complex s, std::uint64_t M) {
    return 2.0 * std::pow(static_cast<double>(M), 0.25 - s.real());
}

inline void check_pole(Complex s, double pole) {
    if (std::abs(s - Complex(pole, 0.0)) < kPoleRadius)
        throw PoleError("zeta_band: within exclusion radius of pole", pole);
}

inline Complex pow_int(std::uint64_t n, Complex exponent) {
    return std::pow(Complex(static_cast<double>(n), 0.0), exponent);
}

} // namespace detail

/* Evaluates the analytic continuation on sigma > 1/3 by an explicit head sum,
   closed-form main-term corrections at N, exact unit-interval integration of
   the error term up to a horizon M, and a bounded tail. Carries a compressed
   nonzero-coefficient table so scans amortize the sieve. */
class Evaluator {
public:
    Evaluator(const Band& band, const ContinuationConfig& cfg)
        : band_(band), cfg_(cfg), mt_(main_constants(band)) {
        validate(cfg);
    }

    const Band& band() const { return band_; }
    const ContinuationConfig& cfg() const { return cfg_; }
    const MainTerms& main_terms() const { return mt_; }

    /* Extend the compressed table to cover m <= cap. */
    void ensure_capacity(std::uint64_t cap) {
        if (cap <= capacity_) return;
        constexpr std::uint64_t kWindow = 1ull << 22;
        for (std::uint64_t lo = capacity_ + 1; lo <= cap; lo += kWindow) {
            const std::uint64_t hi = std::min(cap, lo + kWindow - 1);
            const auto table = sieve_d_band(lo, hi, band_);
            for (std::uint64_t n = lo; n <= hi; ++n) {
                const std::uint32_t d = table[n - lo];
                if (d == 0) continue;
                running_count_ += d;
                m_.push_back(static_cast<std::uint32_t>(n));
                d_.push_back(static_cast<std::uint16_t>(d));
                logm_.push_back(std::log(static_cast<double>(n)));
                cum_.push_back(running_count_);
            }
        }
        capacity_ = cap;
    }

    std::size_t term_count() const { return m_.size(); }
    const std::vector<std::uint32_t>& terms_m() const { return m_; }
    const std::vector<std::uint16_t>& terms_d() const { return d_; }
    const std::vector<double>& terms_logm() const { return logm_; }
    const std::vector<std::uint64_t>& terms_cum() const { return cum_; }
    std::uint64_t capacity() const { return capacity_; }

    /* Index of the last table entry with m <= bound; size() if none. */
    std::size_t prefix_end(std::uint64_t bound) const {
        auto it = std::upper_bound(m_.begin(), m_.end(), bound);
        return static_cast<std::size_t>(it - m_.begin());
    }

    /* D(bound) from the table (bound must be <= capacity). */
    std::uint64_t count_upto(std::uint64_t bound) const {
        const std::size_t e = prefix_end(bound);
        return e == 0 ? 0 : cum_[e - 1];
    }

    /* Strict mode: grow M from cfg.M until the tail certificate clears
       tail_tol, or fail loudly at the horizon cap. */
    Complex eval_strict(Complex s, EvalInfo* info = nullptr) const {
        check_domain(s);
        std::uint64_t M = std::max({cfg_.M, cfg_.N + 1, kCertifyFloor});
        double bound = detail::certified_tail_bound(s, M);
        while (bound > cfg_.tail_tol && M < kHorizonCap) {
            M = std::min(kHorizonCap, M * 2);
            bound = detail::certified_tail_bound(s, M);
        }
        if (bound > cfg_.tail_tol)
            throw ToleranceError("zeta_band: tail not certifiable at horizon cap " +
                                     std::to_string(kHorizonCap),
                                 bound, cfg_.tail_tol);
        return eval_at(s, M, bound, true, info);
    }

    /* Horizon mode: fixed oscillatory horizon keyed to t; tail reported as an
       uncertified estimate. Used by the mean-square and residual scans. */
    Complex eval_horizon(Complex s, EvalInfo* info = nullptr) const {
        check_domain(s);
        const std::uint64_t M = std::max(
            {cfg_.M, cfg_.N + 1, detail::oscillatory_horizon(s.imag())});
        return eval_at(s, M, detail::horizon_tail_estimate(s, M), false, info);
    }

    /* Head-sum prefix sum_{n<=bound} d(n) n^{-exponent} from the table. */
    Complex prefix_power_sum(std::uint64_t bound, Complex exponent) const {
        const std::size_t e = prefix_end(bound);
        long double re = 0.0L, im = 0.0L;
        for (std::size_t i = 0; i < e; ++i) {
            const double r = std::exp(-exponent.real() * logm_[i]);
            const double ang = -exponent.imag() * logm_[i];
            re += static_cast<long double>(d_[i]) * r * std::cos(ang);
            im += static_cast<long double>(d_[i]) * r * std::sin(ang);
        }
        return {static_cast<double>(re), static_cast<double>(im)};
    }

    /* Assemble the continuation value from externally computed power sums.
       sum_head covers n <= N, sum_mid covers N < m <= M-1; both at exponent s. */
    Complex assemble(Complex s, Complex sum_head, Complex sum_mid,
                     std::uint64_t M, std::uint64_t D_N,
                     std::uint64_t D_M_minus_1) const {
        const std::uint64_t N = cfg_.N;
        const double Nd = static_cast<double>(N);
        const long double delta_N =
            static_cast<long double>(D_N) -
            static_cast<long double>(mt_.c1) * Nd -
            static_cast<long double>(mt_.c2) * std::sqrt(static_cast<long double>(Nd));

        const Complex one(1.0, 0.0);
        const Complex N_pow_1ms = detail::pow_int(N, one - s);
        const Complex N_pow_hms = detail::pow_int(N, Complex(0.5, 0.0) - s);
        const Complex N_pow_ms = detail::pow_int(N, -s);
        const Complex M_pow_1ms = detail::pow_int(M, one - s);
        const Complex M_pow_hms = detail::pow_int(M, Complex(0.5, 0.0) - s);
        const Complex M_pow_ms = detail::pow_int(M, -s);

        Complex value = sum_head;
        value -= mt_.c1 * N_pow_1ms / (one - s);
        value -= mt_.c2 * N_pow_hms / (one - 2.0 * s);
        value -= static_cast<double>(delta_N) * N_pow_ms;
        /* s * int_N^M Delta(u) u^{-s-1} du, integrated exactly over unit
           intervals and telescoped: */
        Complex sI = static_cast<double>(D_N) * N_pow_ms + sum_mid -
                     static_cast<double>(D_M_minus_1) * M_pow_ms;
        sI -= s * mt_.c1 * (M_pow_1ms - N_pow_1ms) / (one - s);
        sI -= s * mt_.c2 * (M_pow_hms - N_pow_hms) / (Complex(0.5, 0.0) - s);
        return value + sI;
    }

private:
    void check_domain(Complex s) const {
        if (!(s.real() > kSigmaFloor))
            throw DomainError("zeta_band: require sigma > 1/3 + 0.01");
        detail::check_pole(s, 1.0);
        detail::check_pole(s, 0.5);
    }

    Complex eval_at(Complex s, std::uint64_t M, double tail_bound,
                    bool certified, EvalInfo* info) const {
        const std::uint64_t N = cfg_.N;
        Complex sum_head, sum_mid;
        std::uint64_t D_N = 0, D_M1 = 0;
        if (M <= capacity_) {
            sum_head = prefix_power_sum(N, s);
            D_N = count_upto(N);
            const std::size_t eN = prefix_end(N);
            const std::size_t eM = prefix_end(M - 1);
            long double re = 0.0L, im = 0.0L;
            for (std::size_t i = eN; i < eM; ++i) {
                const double r = std::exp(-s.real() * logm_[i]);
                const double ang = -s.imag() * logm_[i];
                re += static_cast<long double>(d_[i]) * r * std::cos(ang);
                im += static_cast<long double>(d_[i]) * r * std::sin(ang);
            }
            sum_mid = {static_cast<double>(re), static_cast<double>(im)};
            D_M1 = eM == 0 ? 0 : cum_[eM - 1];
        } else {
            stream_sums(s, N, M, sum_head, sum_mid, D_N, D_M1);
        }
        if (info) *info = {N, M, tail_bound, certified};
        return assemble(s, sum_head, sum_mid, M, D_N, D_M1);
    }

    /* One sieve sweep over [1, M-1] accumulating both power sums and counts.
       D(N) equals the running count at the last nonzero entry <= N because the
       summatory function is flat across zero-coefficient n. */
    void stream_sums(Complex s, std::uint64_t N, std::uint64_t M,
                     Complex& sum_head, Complex& sum_mid, std::uint64_t& D_N,
                     std::uint64_t& D_M1) const {
        constexpr std::uint64_t kWindow = 1ull << 22;
        long double hr = 0.0L, hi_ = 0.0L, mr = 0.0L, mi = 0.0L;
        std::uint64_t count = 0;
        std::uint64_t head_count = 0;
        for (std::uint64_t lo = 1; lo < M; lo += kWindow) {
            const std::uint64_t hi = std::min(M - 1, lo + kWindow - 1);
            const auto table = sieve_d_band(lo, hi, band_);
            for (std::uint64_t n = lo; n <= hi; ++n) {
                const std::uint32_t d = table[n - lo];
                if (d == 0) continue;
                count += d;
                const double lm = std::log(static_cast<double>(n));
                const double r = std::exp(-s.real() * lm);
                const double ang = -s.imag() * lm;
                const double cr = d * r * std::cos(ang);
                const double ci = d * r * std::sin(ang);
                if (n <= N) {
                    hr += cr;
                    hi_ += ci;
                    head_count = count;
                } else {
                    mr += cr;
                    mi += ci;
                }
            }
        }
        sum_head = {static_cast<double>(hr), static_cast<double>(hi_)};
        sum_mid = {static_cast<double>(mr), static_cast<double>(mi)};
        D_N = head_count;
        D_M1 = count;
    }

    Band band_;
    ContinuationConfig cfg_;
    MainTerms mt_;
    std::uint64_t capacity_ = 0;
    std::uint64_t running_count_ = 0;
    std::vector<std::uint32_t> m_;
    std::vector<std::uint16_t> d_;
    std::vector<double> logm_;
    std::vector<std::uint64_t> cum_;
};

inline Complex zeta_band(Complex s, const Band& band,
                         const ContinuationConfig& cfg = {},
                         EvalInfo* info = nullptr) {
    return Evaluator(band, cfg).eval_strict(s, info);
}

struct DirectSeriesResult {
    Complex partial;
    double tail_bound = 0.0;
    std::uint64_t cutoff = 0;
};

/* Plain Dirichlet partial sum on sigma > 1.05 with a rigorous
   integral-comparison bound on the omitted tail. */
inline DirectSeriesResult zeta_band_direct(Complex s, const Band& band,
                                           std::uint64_t cutoff) {
    const double sigma = s.real();
    if (!(sigma > 1.05))
        throw DomainError("zeta_band_direct: require sigma > 1.05");
    if (cutoff < 1) throw DomainError("zeta_band_direct: cutoff must be >= 1");

    constexpr std::uint64_t kWindow = 1ull << 22;
    long double re = 0.0L, im = 0.0L;
    for (std::uint64_t lo = 1; lo <= cutoff; lo += kWindow) {
        const std::uint64_t hi = std::min(cutoff, lo + kWindow - 1);
        const auto table = sieve_d_band(lo, hi, band);
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const std::uint32_t d = table[n - lo];
            if (d == 0) continue;
            const double lm = std::log(static_cast<double>(n));
            const double r = std::exp(-sigma * lm);
            const double ang = -s.imag() * lm;
            re += static_cast<long double>(d) * r * std::cos(ang);
            im += static_cast<long double>(d) * r * std::sin(ang);
        }
    }
    const MainTerms mt = main_constants(band);
    const double C = static_cast<double>(cutoff);
    DirectSeriesResult out;
    out.partial = {static_cast<double>(re), static_cast<double>(im)};
    out.cutoff = cutoff;
    /* sum_{n>C} d(n) n^{-sigma} <= sigma * int_C^inf (D(u)-D(C)) u^{-sigma-1} du
       with D(u)-D(C) <= c1 (u-C) + |c2| (sqrt(u)-sqrt(C)) + 2K u^{1/3}. */
    out.tail_bound = mt.c1 * std::pow(C, 1.0 - sigma) / (sigma - 1.0) +
                     std::fabs(mt.c2) * std::pow(C, 0.5 - sigma) / (2.0 * sigma - 1.0) +
                     2.0 * kDeltaPointwiseK * sigma *
                         std::pow(C, 1.0 / 3.0 - sigma) / (sigma - 1.0 / 3.0);
    return out;
}

namespace detail {

/* Classical Riemann zeta by Euler-Maclaurin; ample for the moderate |t| the
   auxiliary series needs. Cutoff scales with |t| so the correction series
   stays asymptotic. */
inline Complex riemann_zeta_em(Complex s) {
    if (std::abs(s - Complex(1.0, 0.0)) < 1e-12)
        throw PoleError("riemann_zeta_em: pole at s = 1", 1.0);
    const auto N = static_cast<std::uint64_t>(
        std::max(32.0, std::ceil(1.5 * std::fabs(s.imag()))));
    Complex sum(0.0, 0.0);
    for (std::uint64_t n = 1; n < N; ++n) sum += pow_int(n, -s);
    const Complex Nms = pow_int(N, -s);
    const double Nd = static_cast<double>(N);
    sum += Nms * Complex(Nd, 0.0) / (s - Complex(1.0, 0.0));  // N^{1-s}/(s-1)
    sum += 0.5 * Nms;
    /* sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{1-s-2k} */
    Complex poch = s;                     // rising product, 2k-1 factors
    double factorial = 2.0;               // (2k)!
    Complex npow = Nms / Nd;              // N^{-s-1}, then N^{-s-2k+1}
    const double N2 = Nd * Nd;
    for (int k = 1; k <= 12; ++k) {
        sum += kBernoulliEven[k - 1] / factorial * poch * npow;
        poch *= (s + Complex(2.0 * k - 1.0, 0.0)) * (s + Complex(2.0 * k, 0.0));
        factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
        npow /= N2;
    }
    return sum;
}

} // namespace detail

/* Z(s) = sum r(n) n^{-s} through the divisor-window identity
   r(n) = d_{1/2,1}(n/2) - [n/2 is a square], i.e.
   Z(s) = 2^{-s} (zeta_{1/2,1}(s) - zeta(2s)). */
inline Complex z_aux(Complex s, const ContinuationConfig& cfg = {},
                     EvalInfo* info = nullptr) {
    if (!(s.real() > kSigmaFloor))
        throw DomainError("z_aux: require sigma > 1/3 + 0.01");
    detail::check_pole(s, 1.0);
    detail::check_pole(s, 0.5);
    const Band half_band(Rational(1, 2), Rational(1, 1));
    const Complex band_part = zeta_band(s, half_band, cfg, info);
    const Complex zeta2s = detail::riemann_zeta_em(2.0 * s);
    return std::exp(-s * std::log(2.0)) * (band_part - zeta2s);
}

/* Residual of the two-sum approximation at the symmetric split
   x = y = t/(2 pi). The continuation value uses the oscillatory horizon:
   certified tails are out of reach for t in the scan ranges. */
inline Complex afe_residual(Complex s, const Band& band,
                            const ContinuationConfig& cfg = {},
                            const Evaluator* shared = nullptr) {
    const double sigma = s.real(), t = s.imag();
    if (!(sigma > 0.5) || !(sigma < 1.0))
        throw DomainError("afe_residual: require 1/2 < sigma < 1");
    if (!(t >= 10.0)) throw DomainError("afe_residual: require t >= 10");
    const auto x = static_cast<std::uint64_t>(t / kTwoPi);

    Complex value, sum1, sum2;
    if (shared && shared->capacity() >= detail::oscillatory_horizon(t)) {
        value = shared->eval_horizon(s);
        sum1 = shared->prefix_power_sum(x, s);
        sum2 = shared->prefix_power_sum(x, Complex(1.0, 0.0) - s);
    } else {
        Evaluator ev(band, cfg);
        ev.ensure_capacity(std::max(
            {cfg.M, cfg.N + 1, detail::oscillatory_horizon(t)}));
        value = ev.eval_horizon(s);
        sum1 = ev.prefix_power_sum(x, s);
        sum2 = ev.prefix_power_sum(x, Complex(1.0, 0.0) - s);
    }
    const Complex c = chi(s);
    return value - sum1 - c * c * sum2;
}

struct AfeRmsPoint {
    double T = 0.0;
    double rms = 0.0;
    std::size_t samples = 0;
};

/* RMS of |residual| over midpoint samples of [T, 2T] for each T. One shared
   coefficient table serves every sample; samples parallelize per index. */
inline std::vector<AfeRmsPoint> afe_rms_scan(const std::vector<double>& Ts,
                                             double sigma, const Band& band,
                                             std::size_t samples = 160,
                                             const ContinuationConfig& cfg = {},
                                             unsigned threads = 0) {
    if (Ts.empty()) throw DomainError("afe_rms_scan: empty T list");
    if (samples < 2) throw DomainError("afe_rms_scan: need >= 2 samples");
    double t_max = 0.0;
    for (double T : Ts) {
        if (!(T >= 10.0)) throw DomainError("afe_rms_scan: require T >= 10");
        t_max = std::max(t_max, 2.0 * T);
    }
    Evaluator ev(band, cfg);
    ev.ensure_capacity(std::max({cfg.M, cfg.N + 1,
                                 detail::oscillatory_horizon(t_max)}));
    std::vector<AfeRmsPoint> out(Ts.size());
    for (std::size_t j = 0; j < Ts.size(); ++j) {
        const double T = Ts[j];
        std::vector<double> sq(samples, 0.0);
        parallel_for(samples, resolve_threads(threads), [&](std::size_t i) {
            const double t = T * (1.0 + (static_cast<double>(i) + 0.5) /
                                            static_cast<double>(samples));
            const Complex e = afe_residual(Complex(sigma, t), band, cfg, &ev);
            sq[i] = std::norm(e);
        });
        long double acc = 0.0L;
        for (double v : sq) acc += v;
        out[j] = {T, std::sqrt(static_cast<double>(acc / samples)),
                  samples};
    }
    return out;
}

} // namespace zetaband
