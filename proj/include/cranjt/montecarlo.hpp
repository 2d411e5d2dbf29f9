#pragma once

#include <span>
#include <vector>

#include "cranjt/channel.hpp"
#include "cranjt/coverage.hpp"
#include "cranjt/gamma_moments.hpp"
#include "cranjt/geometry.hpp"
#include "cranjt/params.hpp"

namespace cranjt {

enum class SimMode {
    exact,           ///< received powers straight from the signal model
    no_cross_terms,  ///< interference with the cross terms dropped
    gamma_approx,    ///< interference coefficients replaced by Gamma surrogates
};

struct SinrSamples {
    std::vector<double> values;
    SimMode mode = SimMode::exact;
    NetworkParams params;
    SimWindow window;
    long n_realizations = 0;
};

struct EngineOptions {
    int workers = 0;
    /// Gamma surrogate parameters for gamma_approx mode.
    ZMomentMode z_mode = ZMomentMode::printed;
};

/// Samples the centric-user SINR over independent realizations: RRH process
/// conditioned on an empty exclusion disk at the origin, thinned users plus
/// the centric user, distance-rule assignment, fading, and the mode's power
/// computation. Realization i draws from stream (seed.master, i), so results
/// are bit-identical for any worker count.
SinrSamples simulate_sinr(const NetworkParams& params, SimMode mode, long n_realizations,
                          const SimWindow& window, const SeedSpec& seed,
                          const EngineOptions& options = {});

/// Exceedance fractions over a sorted threshold grid with Wilson 95% bounds.
CoverageCurve empirical_coverage(const SinrSamples& samples, std::span<const double> thetas);

struct InterferenceRatioResult {
    double ratio = 0.0;  ///< mean in-set over mean out-of-set interference
    double mean_inset = 0.0;
    double mean_outset = 0.0;
    double se_ratio = 0.0;      ///< delta-method standard error of `ratio`
    double mean_of_ratio = 0.0; ///< E[in/out] over realizations with sampled out-of-set power
    long zero_outset = 0;       ///< realizations that sampled no out-of-set interference
    long n_realizations = 0;
};

/// Mean interference split under the no-cross-term + Gamma-surrogate
/// hypotheses (gamma_approx mode). Infinite ratio with a diagnostic count
/// when no out-of-set interference was sampled at all.
InterferenceRatioResult interference_ratio(const NetworkParams& params, long n_realizations,
                                           const SimWindow& window, const SeedSpec& seed,
                                           const EngineOptions& options = {});

struct SetCountOptions {
    double user_sep = -1.0;  ///< center distance of the user-side probe disks; -1 = r
    double rrh_sep = -1.0;   ///< RRH-side probe distance; -1 = sqrt(r^2 + r1^2/4)
    int n_max = 24;          ///< histogram saturation bound
    int workers = 0;
};

/// Joint count histograms of two overlapping serving disks over fresh PPP
/// draws: the user side unconditioned, the RRH side conditioned on a nonempty
/// overlap (the tagged RRH serves both users). Marginals are collected
/// unconditioned on both sides.
struct SetCountHistogram {
    double r = 0.0;
    double user_sep = 0.0;
    double rrh_sep = 0.0;
    int n_max = 0;
    std::vector<long> user_joint;     ///< (n_max+1)^2, row n_u, col n_u'
    std::vector<long> rrh_joint;      ///< overlap-conditioned rows
    std::vector<long> user_marginal;  ///< n_u, unconditioned
    std::vector<long> rrh_marginal;   ///< n_r, unconditioned
    long realizations = 0;
    long rrh_lens_empty = 0;  ///< realizations rejected by the overlap condition

    long user_at(int n, int np) const { return user_joint[static_cast<std::size_t>(n) * (n_max + 1) + np]; }
    long rrh_at(int n, int np) const { return rrh_joint[static_cast<std::size_t>(n) * (n_max + 1) + np]; }
};

SetCountHistogram empirical_set_counts(const NetworkParams& params, double r, long n_realizations,
                                       const SeedSpec& seed, const SetCountOptions& options = {});

/// Mode-specific received-power split for a prepared realization; gamma_approx
/// draws its surrogates from `rng` and needs a Z table.
PowerSplit received_power_mode(const NetworkRealization& real, const Assignment& assign,
                               int target_user, SimMode mode, const NetworkParams& params,
                               std::mt19937_64& rng, const ZTable* ztable = nullptr);

double sinr_from_split(const PowerSplit& split);

}  // namespace cranjt
