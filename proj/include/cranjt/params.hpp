#pragma once

#include <cstdint>

namespace cranjt {

/// Scalar model parameters shared by the simulator and the analytic pipeline.
/// SI units throughout: densities in m^-2, radii in m, powers in W.
struct NetworkParams {
    double lambda_r = 1.27e-4;  ///< RRH density
    double lambda_u = 3.18e-5;  ///< user density
    int antennas = 1;           ///< antennas per RRH (M)
    double alpha = 3.0;         ///< path-loss exponent, must exceed 2
    double r0 = 1.0;            ///< exclusion radius around each RRH
    double r1 = 100.0;          ///< cooperation radius
    double noise_w = 0.0;       ///< thermal noise power

    bool operator==(const NetworkParams&) const = default;
};

/// Returns the params unchanged if all invariants hold; throws
/// std::invalid_argument naming the first violated invariant.
const NetworkParams& validate(const NetworkParams& p);

double annulus_area(double r0, double r1);
double annulus_mean(double density, double r0, double r1);
double disk_mean(double density, double radius);

/// Truncation and tolerance knobs for every infinite series and quadrature.
struct TruncationPolicy {
    double tail_mass_eps = 1e-6;  ///< max neglected Poisson tail mass per series
    int max_terms = 256;          ///< hard cap on any series index
    double quad_rel_tol = 1e-6;   ///< relative tolerance for quadratures
    double cf_tail_cut = 1e-8;    ///< stop extending the inversion integral once |cf| < this

    /// Smallest index bound covering at least 1 - tail_mass_eps of a Poisson
    /// law with the given mean, capped at max_terms. A mean + 8*sqrt(mean)
    /// cutoff keeps the neglected mass far below tail_mass_eps.
    int series_limit(double mean) const;

    bool operator==(const TruncationPolicy&) const = default;
};

void validate(const TruncationPolicy& policy);

/// Identifies one realization's random stream. The stream seed is a pure
/// function of (master, realization) so results do not depend on how
/// realizations are distributed over workers.
struct SeedSpec {
    std::uint64_t master = 0;
    std::uint64_t realization = 0;
};

std::uint64_t stream_seed(const SeedSpec& seed);

}  // namespace cranjt
