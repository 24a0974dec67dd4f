#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "zetaband/errors.hpp"

namespace zetaband {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t sample_count = 0;
};

/* Ordinary least squares of y against x. */
inline LineFit ols_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DomainError("ols_fit: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw FitError("ols_fit: need at least 2 points");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw FitError("ols_fit: degenerate abscissa");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.sample_count = n;
    return f;
}

/* Geometric grid of `points` values spanning [lo, hi], each offset by +0.5
   from the nearest integer so floor-sensitive quantities are sampled away
   from their jump set. */
inline std::vector<double> geometric_grid(double lo, double hi, std::size_t points) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("geometric_grid: need 0 < lo < hi");
    if (points < 2) throw DomainError("geometric_grid: need at least 2 points");
    std::vector<double> xs(points);
    const double step = std::log(hi / lo) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
        double v = lo * std::exp(step * static_cast<double>(i));
        xs[i] = std::floor(v) + 0.5;
    }
    return xs;
}

} // namespace zetaband
