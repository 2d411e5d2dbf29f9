#include "cranjt/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cranjt/parallel.hpp"
#include "cranjt/quadrature.hpp"
#include <string>

namespace cranjt {

namespace {

ZTable make_ztable(const NetworkParams& params, const TruncationPolicy& policy,
                   const AnalyticOptions& opt) {
    const double mu_r = annulus_mean(params.lambda_r, params.r0, params.r1);
    return {params.antennas, policy.series_limit(mu_r), opt.z_mode, 0x5eedf00dULL, 200000,
            opt.workers};
}

}  // namespace

AnalyticCoverage::AnalyticCoverage(const NetworkParams& params, const TruncationPolicy& policy,
                                   const AnalyticOptions& options)
    : params_(validate(params)),
      policy_(policy),
      opt_(options),
      ztable_(make_ztable(params_, policy_, opt_)),
      cf_(params_, policy_, ztable_),
      pi2_(params_, policy_, ztable_, PhiPI2::Options{opt_.pi2_r_max, opt_.pi2_user_window}) {
    validate(policy_);
}

GilPelaezResult AnalyticCoverage::probability_result(double theta) const {
    if (!(theta > 0.0)) throw std::invalid_argument("coverage: theta must be positive");
    const auto cf = [&](double t) { return cf_.mixture_cf(t, theta) * pi2_(-theta * t); };
    GilPelaezResult gp;
    try {
        gp = gil_pelaez(cf, theta * params_.noise_w, policy_);
    } catch (const QuadratureError& e) {
        throw QuadratureError(std::string(e.what()) + locate_failing_stratum(theta), e.estimate,
                              e.residual);
    }
    // The inversion was run on the strata mixture; each stratum contributes
    // p*(1/2 + integral), and the empty stratum contributes no coverage.
    gp.raw = cf_.stratum_mass() * 0.5 + (gp.raw - 0.5);
    gp.prob = std::clamp(gp.raw, 0.0, 1.0);
    gp.residual += cf_.truncation_residual();
    return gp;
}

std::string AnalyticCoverage::locate_failing_stratum(double theta) const {
    // Diagnostic pass after a mixture-inversion failure: invert stratum by
    // stratum to name the first offender.
    const double mu_r = annulus_mean(params_.lambda_r, params_.r0, params_.r1);
    const double mu_u = annulus_mean(params_.lambda_u, params_.r0, params_.r1);
    for (int nr = 1; nr <= policy_.series_limit(mu_r); ++nr) {
        for (int nu = 0; nu <= policy_.series_limit(mu_u); ++nu) {
            try {
                const auto cf = [&](double t) {
                    return cf_.phi_pu_prime(t, theta, nr, nu) * pi2_(-theta * t);
                };
                gil_pelaez(cf, theta * params_.noise_w, policy_);
            } catch (const QuadratureError&) {
                return " [theta " + std::to_string(theta) + ", stratum n_r=" + std::to_string(nr) +
                       " n_u=" + std::to_string(nu) + "]";
            }
        }
    }
    return " [theta " + std::to_string(theta) + ", no single stratum implicated]";
}

double AnalyticCoverage::probability(double theta) const {
    return probability_result(theta).prob;
}

CoverageCurve AnalyticCoverage::curve(std::span<const double> thetas) const {
    CoverageCurve out;
    out.source = "analytic";
    out.params = params_;
    out.truncation_residual = cf_.truncation_residual();
    out.thetas.assign(thetas.begin(), thetas.end());
    out.probs.resize(thetas.size());
    out.half_width.resize(thetas.size());
    parallel_for(static_cast<long>(thetas.size()), opt_.workers, [&](long i) {
        const GilPelaezResult gp = probability_result(out.thetas[i]);
        out.probs[i] = gp.prob;
        out.half_width[i] = gp.residual;
    });
    // Coverage is an exceedance curve; clip any residual quadrature wiggle.
    for (std::size_t i = 1; i < out.probs.size(); ++i)
        out.probs[i] = std::min(out.probs[i], out.probs[i - 1]);
    return out;
}

double AnalyticCoverage::se_cdf(double se_threshold) const {
    if (se_threshold < 0.0) throw std::invalid_argument("se_cdf: threshold must be nonnegative");
    const double theta = std::exp2(se_threshold) - 1.0;
    if (theta <= 0.0) {
        // SINR > 0 exactly when the cooperative set is nonempty.
        const double p0 = annulus_poisson_pmf(params_.lambda_r, params_.r0, params_.r1, 0);
        return p0;
    }
    return 1.0 - probability(theta);
}

double AnalyticCoverage::mean_se() const {
    // integral of the exceedance P[SE > s] = coverage(2^s - 1) on unit panels,
    // then an exponential-tail extrapolation.
    const GaussRule rule = gauss_legendre(8, 0.0, 1.0);
    double total = 0.0;
    double edge_prev = 1.0 - se_cdf(0.0);
    double edge = 0.0;
    int panel = 0;
    for (; panel < 64; ++panel) {
        double piece = 0.0;
        for (int q = 0; q < 8; ++q) {
            const double s = panel + rule.nodes[q];
            piece += rule.weights[q] * (1.0 - se_cdf(s));
        }
        total += piece;
        edge = 1.0 - se_cdf(static_cast<double>(panel + 1));
        if (edge < 1e-3) break;
        edge_prev = edge;
    }
    if (edge > 0.0 && edge_prev > edge) {
        const double tau = 1.0 / std::log(edge_prev / edge);
        total += edge * tau;
    }
    return total;
}

double coverage_probability(const NetworkParams& params, double theta,
                            const TruncationPolicy& policy, const AnalyticOptions& options) {
    return AnalyticCoverage(params, policy, options).probability(theta);
}

}  // namespace cranjt
