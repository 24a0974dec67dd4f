#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "zetaband/detail/ddouble.hpp"
#include "zetaband/divisors.hpp"
#include "zetaband/errors.hpp"
#include "zetaband/parallel.hpp"
#include "zetaband/rational.hpp"
#include "zetaband/sawtooth.hpp"
#include "zetaband/summatory.hpp"

namespace zetaband {

inline constexpr std::uint64_t kVoronoiTermCap = 100'000'000;

struct VoronoiComparison {
    double x = 0.0;
    std::uint64_t H = 0;
    double delta_exact = 0.0;
    double m_value = 0.0;
    double residual = 0.0;  // delta_exact - m_value
};

struct ResidualScanSummary {
    std::vector<VoronoiComparison> points;
    double rms_residual = 0.0;
    double rms_delta = 0.0;
    double max_abs_residual = 0.0;
};

/* Oscillatory-series coefficients: for each n <= beta*H^2 the boundary-halved
   pair count over n = k*l with alpha*l <= k <= beta*l and l <= H, stored as
   twice the weight (so exact halves stay integral) together with the
   amplitude weight * n^{-3/4}. Entries with zero weight are dropped. */
class CoefficientTable {
public:
    struct Entry {
        std::uint32_t n;
        std::uint32_t twice;
        double amp;
    };

    CoefficientTable(const Band& band, std::uint64_t H) : band_(band), H_(H) {
        if (H < 2) throw DomainError("CoefficientTable: H must be >= 2");
        const auto h = static_cast<std::int64_t>(H);
        const std::int64_t declared = band.beta().floor_mul(h * h);
        if (declared < 0) throw DomainError("CoefficientTable: empty range");
        if (static_cast<std::uint64_t>(declared) > kVoronoiTermCap)
            throw ResourceError("CoefficientTable: beta*H^2 = " +
                                std::to_string(declared) + " exceeds term cap " +
                                std::to_string(kVoronoiTermCap));
        n_max_ = static_cast<std::uint64_t>(declared);

        std::vector<std::uint16_t> twice_of(n_max_ + 1, 0);
        for (std::int64_t l = 1; l <= h; ++l) {
            const std::int64_t k_hi = band.beta().floor_mul(l);
            std::int64_t k = band.alpha().floor_mul(l);
            if (k < 1) k = 1;
            for (; k <= k_hi; ++k) {
                const int lo_cmp = band.alpha().cmp_mul_vs(l, k);
                if (lo_cmp > 0) continue;  // k < alpha*l
                const int hi_cmp = band.beta().cmp_mul_vs(l, k);
                if (hi_cmp < 0) continue;  // k > beta*l (unreachable here)
                const bool on_edge = (lo_cmp == 0) || (hi_cmp == 0);
                twice_of[static_cast<std::uint64_t>(k * l)] += on_edge ? 1 : 2;
            }
        }
        for (std::uint64_t n = 1; n <= n_max_; ++n) {
            if (twice_of[n] == 0) continue;
            const double amp =
                0.5 * twice_of[n] * std::pow(static_cast<double>(n), -0.75);
            entries_.push_back({static_cast<std::uint32_t>(n), twice_of[n], amp});
        }
    }

    const Band& band() const { return band_; }
    std::uint64_t H() const { return H_; }
    std::uint64_t n_max() const { return n_max_; }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    Band band_;
    std::uint64_t H_;
    std::uint64_t n_max_ = 0;
    std::vector<Entry> entries_;
};

namespace detail {

/* Fixed-order chunked pairwise sum of amp * cos(phase_sign*(4*pi*sqrt(nx) - pi/4)).
   The chunk layout is independent of threading, so results are reproducible. */
inline double voronoi_sum(const CoefficientTable& table, double x,
                          double phase_sign) {
    const auto& entries = table.entries();
    constexpr std::size_t kChunk = 4096;
    const std::size_t chunks = (entries.size() + kChunk - 1) / kChunk;
    std::vector<double> partial(chunks, 0.0);
    std::vector<double> terms(kChunk);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = c * kChunk;
        const std::size_t hi = std::min(entries.size(), lo + kChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            terms[i - lo] = entries[i].amp *
                            cos_voronoi_phase(static_cast<double>(entries[i].n),
                                              x, -1.0, phase_sign);
        }
        partial[c] = pairwise_sum(terms.data(), hi - lo);
    }
    return pairwise_sum(partial.data(), partial.size());
}

} // namespace detail

inline double voronoi_main(double x, const CoefficientTable& table) {
    if (!(x >= 1.0) || !std::isfinite(x))
        throw DomainError("voronoi_main: require x >= 1");
    const double prefactor = std::pow(x, 0.25) / (kPi * std::sqrt(2.0));
    return prefactor * detail::voronoi_sum(table, x, 1.0);
}

inline double voronoi_main(double x, std::uint64_t H, const Band& band) {
    return voronoi_main(x, CoefficientTable(band, H));
}

/* Compare the truncated oscillatory series against the exact error term over
   a grid. Scan points are independent; per-point work is serial. */
inline ResidualScanSummary residual_scan(const std::vector<double>& xs,
                                         std::uint64_t H, const Band& band,
                                         unsigned threads = 0) {
    if (xs.empty()) throw DomainError("residual_scan: empty grid");
    for (double x : xs)
        if (!(x >= 1.0)) throw DomainError("residual_scan: require every x >= 1");
    const CoefficientTable table(band, H);

    ResidualScanSummary out;
    out.points.assign(xs.size(), VoronoiComparison{});
    parallel_for(xs.size(), resolve_threads(threads), [&](std::size_t i) {
        VoronoiComparison& c = out.points[i];
        c.x = xs[i];
        c.H = H;
        c.delta_exact = delta(xs[i], band);
        c.m_value = voronoi_main(xs[i], table);
        c.residual = c.delta_exact - c.m_value;
    });

    long double rr = 0.0L, rd = 0.0L;
    for (const auto& c : out.points) {
        rr += static_cast<long double>(c.residual) * c.residual;
        rd += static_cast<long double>(c.delta_exact) * c.delta_exact;
        out.max_abs_residual = std::max(out.max_abs_residual, std::fabs(c.residual));
    }
    out.rms_residual = std::sqrt(static_cast<double>(rr / out.points.size()));
    out.rms_delta = std::sqrt(static_cast<double>(rd / out.points.size()));
    return out;
}

struct GMeanValueResult {
    double integral = 0.0;
    double bound = 0.0;
};

/* Composite-midpoint integral of G(u,H) = min(1, 1/(H*||u||)) over [0,N],
   reported next to the envelope N*log(H)/H. Step is at most 1/(4H). */
inline GMeanValueResult g_mean_value_check(double N, double H) {
    if (!(N >= 1.0)) throw DomainError("g_mean_value_check: require N >= 1");
    if (!(H >= 2.0)) throw DomainError("g_mean_value_check: require H >= 2");
    const auto steps =
        static_cast<std::uint64_t>(std::ceil(N * 4.0 * H));
    const double h = N / static_cast<double>(steps);
    long double acc = 0.0L;
    for (std::uint64_t i = 0; i < steps; ++i) {
        const double u = (static_cast<double>(i) + 0.5) * h;
        acc += g_weight(u, H);
    }
    GMeanValueResult res;
    res.integral = static_cast<double>(acc * h);
    res.bound = N * std::log(H) / H;
    return res;
}

} // namespace zetaband
