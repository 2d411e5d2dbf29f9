#pragma once

#include <span>
#include <string>
#include <vector>

#include "cranjt/charfn.hpp"
#include "cranjt/gil_pelaez.hpp"
#include "cranjt/params.hpp"

namespace cranjt {

/// A coverage (or SE exceedance) curve with provenance and diagnostics.
struct CoverageCurve {
    std::vector<double> thetas;      ///< SINR thresholds, linear scale
    std::vector<double> probs;       ///< coverage values, clamped to [0, 1]
    std::vector<double> half_width;  ///< Wilson 95% half-widths (empirical) or residuals (analytic)
    std::string source;              ///< "analytic" or "empirical"
    NetworkParams params;
    double truncation_residual = 0.0;  ///< neglected strata mass (analytic)
    long n_samples = 0;                ///< realizations behind an empirical curve
};

struct AnalyticOptions {
    ZMomentMode z_mode = ZMomentMode::empirical;
    double pi2_r_max = 0.0;        ///< outer-interference integral limit; 0 = infinite
    double pi2_user_window = 0.0;  ///< finite user-window matching; 0 = off
    int workers = 0;
};

/// Coverage, SE distribution and mean SE from the characteristic-function
/// pipeline. Builds its tables once; evaluations are const and thread-safe.
class AnalyticCoverage {
  public:
    AnalyticCoverage(const NetworkParams& params, const TruncationPolicy& policy,
                     const AnalyticOptions& options = {});

    double probability(double theta) const;
    GilPelaezResult probability_result(double theta) const;
    CoverageCurve curve(std::span<const double> thetas) const;

    /// P[SE <= se_threshold] with SE = log2(1 + SINR).
    double se_cdf(double se_threshold) const;
    /// Mean SE as the integral of the SE exceedance curve.
    double mean_se() const;

    const CfContext& cf_context() const { return cf_; }
    const PhiPI2& phi_pi2() const { return pi2_; }

  private:
    std::string locate_failing_stratum(double theta) const;

    NetworkParams params_;
    TruncationPolicy policy_;
    AnalyticOptions opt_;
    ZTable ztable_;
    CfContext cf_;
    PhiPI2 pi2_;
};

/// One-off convenience wrapper around AnalyticCoverage::probability.
double coverage_probability(const NetworkParams& params, double theta,
                            const TruncationPolicy& policy, const AnalyticOptions& options = {});

}  // namespace cranjt
