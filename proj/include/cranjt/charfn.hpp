#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "cranjt/gamma_moments.hpp"
#include "cranjt/params.hpp"
#include "cranjt/setstats.hpp"

namespace cranjt {

using cplx = std::complex<double>;

/// CF of the useful power from one serving RRH at distance r: a Gamma law of
/// shape `antennas` and scale r^-alpha. Principal branch; |phi| <= 1.
cplx phi_s(double t, double r, int antennas, double alpha);

/// CF of the interference power from one RRH serving an interfering user at
/// distance r from the tagged user, the user itself served by n RRHs in
/// total: Gamma with the moment-matched (shape, scale*r^-alpha).
cplx phi_v(double t, double r, const GammaParams& z, double alpha);

/// Conditional characteristic functions of the per-serving-RRH power terms,
/// with the overlap-count pmfs tabulated on a fixed radial quadrature grid.
class CfContext {
  public:
    CfContext(const NetworkParams& params, const TruncationPolicy& policy, const ZTable& ztable);

    /// CF of the interference emitted by one serving RRH at distance r,
    /// conditioned on the tagged user's set counts. General-r path; the
    /// pmf rows are computed on the fly.
    cplx phi_t(double t, int n_r, int n_u, double r) const;

    /// CF of (useful - theta * in-set interference) given the set counts:
    /// the radial average of phi_s(t|r) * phi_t(-theta t|r) raised to n_r.
    cplx phi_pu_prime(double t, double theta, int n_r, int n_u) const;

    /// Pmf-weighted mixture of phi_pu_prime over the n_r >= 1, n_u strata,
    /// truncated by tail mass. Equals stratum_mass() at t = 0.
    cplx mixture_cf(double t, double theta) const;

    /// Total pmf mass of the included strata.
    double stratum_mass() const { return stratum_mass_; }
    /// Strata mass neglected by the truncation.
    double truncation_residual() const { return truncation_residual_; }

    const NetworkParams& params() const { return params_; }
    const TruncationPolicy& policy() const { return policy_; }
    const ZTable& ztable() const { return ztable_; }
    const LensLine& lens_line() const { return lens_; }

  private:
    cplx phi_t_from_rows(double t, double r, std::span<const double> user_row,
                         std::span<const double> rrh_row) const;

    NetworkParams params_;
    TruncationPolicy policy_;
    ZTable ztable_;
    LensLine lens_;
    int n_r_max_, n_u_max_;
    std::vector<double> p_nr_, p_nu_;  // annulus pmfs, indices 0..max
    double stratum_mass_ = 0.0, truncation_residual_ = 0.0;
    std::vector<double> nodes_, weights_;  // radial rule on [r0, r1], f_r folded in
    std::unique_ptr<CondPmfCache> pmf_cache_;
};

/// CF of the interference aggregated over all RRHs beyond the cooperation
/// radius, via the PPP decomposition by served-user count and the PGFL.
class PhiPI2 {
  public:
    struct Options {
        /// Upper limit of the radial integral; 0 integrates to infinity.
        double r_max = 0.0;
        /// When positive, the served-user mean of an RRH at radius rho is
        /// scaled by the overlap of its serving disk with the user window,
        /// matching a finite-window simulation.
        double user_window_radius = 0.0;
    };

    PhiPI2(const NetworkParams& params, const TruncationPolicy& policy, const ZTable& ztable)
        : PhiPI2(params, policy, ztable, Options{}) {}
    PhiPI2(const NetworkParams& params, const TruncationPolicy& policy, const ZTable& ztable,
           Options options);

    cplx operator()(double t) const;

    const Options& options() const { return opt_; }

  private:
    cplx radial_integral(double t) const;  // integral of the PGFL exponent

    NetworkParams params_;
    TruncationPolicy policy_;
    Options opt_;
    std::vector<GammaParams> ztab_;    // per served-count m = 1..m_max
    std::vector<double> p_trunc_;      // truncated Poisson, renormalized over 1..m_max
    std::vector<double> p_user_;       // served-count pmf 0..n_max
    double mu_user_ = 0.0;
    cplx b1_, b2_, b3_;                // small-argument expansion of phi_Y
    cplx c1_, c2_, c3_;                // expansion of the summed exponent integrand
    double u_hi_ = 0.0, u_lo_ = 0.0;   // integration range in u = r^-alpha
};

}  // namespace cranjt
