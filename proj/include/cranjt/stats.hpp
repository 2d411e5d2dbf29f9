#pragma once

#include <cmath>

namespace cranjt {

/// Poisson pmf computed in log space; robust for large means and indices.
inline double poisson_pmf(int n, double mean) {
    if (n < 0) return 0.0;
    if (!(mean > 0.0)) return n == 0 ? 1.0 : 0.0;
    return std::exp(n * std::log(mean) - mean - std::lgamma(n + 1.0));
}

/// Half-width of the Wilson score interval for a proportion.
inline double wilson_halfwidth(double successes, double n, double z = 1.959963984540054) {
    if (!(n > 0.0)) return 0.5;
    const double p = successes / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    return z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
}

}  // namespace cranjt
