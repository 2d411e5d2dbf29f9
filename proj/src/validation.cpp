#include "cranjt/validation.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "cranjt/charfn.hpp"
#include "cranjt/coverage.hpp"
#include "cranjt/gamma_moments.hpp"
#include "cranjt/geometry.hpp"
#include "cranjt/gil_pelaez.hpp"
#include "cranjt/montecarlo.hpp"
#include "cranjt/setstats.hpp"
#include "cranjt/stats.hpp"

namespace cranjt {

namespace {

constexpr double kPi = std::numbers::pi;

ValidationCheck check(const std::string& name, double value, double bound,
                      const std::string& detail) {
    return {name, std::abs(value) <= bound, std::abs(value), bound, detail};
}

}  // namespace

std::vector<ValidationCheck> run_validation_suite() {
    std::vector<ValidationCheck> out;
    const TruncationPolicy policy;

    {  // closed-form inversions
        const auto cf_exp = [](double t) { return 1.0 / std::complex<double>(1.0, -t); };
        const double p = gil_pelaez(cf_exp, 1.0, policy).prob;
        out.push_back(check("gil_pelaez_exponential_q1", p - std::exp(-1.0), 1e-4,
                            "P[X>1] for exp(1)"));
        const auto cf_norm = [](double t) {
            return std::complex<double>(std::exp(-0.5 * t * t), 0.0);
        };
        const double p2 = gil_pelaez(cf_norm, 0.0, policy).prob;
        out.push_back(check("gil_pelaez_normal_median", p2 - 0.5, 1e-4, "P[X>0] for N(0,1)"));
    }
    {  // printed moment-matching exact case
        const GammaParams g = gamma_params(1, 1);
        out.push_back(check("gamma_params_11_shape", g.shape - 1.0, 1e-12, "shape at M=N=1"));
        out.push_back(check("gamma_params_11_scale", g.scale - 1.0, 1e-12, "scale at M=N=1"));
        const RatioMoments mom = ratio_moments_oracle(1, 1, 200000, {42, 0});
        out.push_back(check("ratio_oracle_11_mean", mom.mean - 1.0, 0.01, "oracle mean vs exp(1)"));
        out.push_back(
            check("ratio_oracle_11_var", mom.variance - 1.0, 0.03, "oracle variance vs exp(1)"));
    }
    {  // lens identities
        const double r1 = 100.0;
        out.push_back(check("lens_exact_full_overlap", lens_area_exact(0.0, r1) - kPi * r1 * r1,
                            1e-9, "coincident disks"));
        out.push_back(check("lens_exact_at_r1",
                            lens_area_exact(r1, r1) - r1 * r1 * (2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0),
                            1e-6, "closed form at d=r1"));
        const ChiZeta cz = chi_zeta(r1);
        out.push_back(check("chi_zeta_rederived_chi",
                            cz.rederived.chi - lens_area_exact(0.5 * r1, r1) / (kPi * r1 * r1),
                            1e-12, "line anchor at r=0"));
        out.push_back(check("chi_zeta_printed_negative", cz.printed.chi < 0.0 ? 0.0 : 1.0, 0.5,
                            "printed chi is negative, rederived line is the default"));
    }
    {  // pmf normalizations
        const NetworkParams p;
        double mass = 0.0;
        for (int n = 0; n <= policy.series_limit(annulus_mean(p.lambda_r, p.r0, p.r1)); ++n)
            mass += annulus_poisson_pmf(p.lambda_r, p.r0, p.r1, n);
        out.push_back(
            check("annulus_pmf_normalization", mass - 1.0, policy.tail_mass_eps, "RRH side"));
        double tmass = 0.0;
        for (int m = 1; m <= policy.series_limit(annulus_mean(p.lambda_r, p.r0, p.r1)); ++m)
            tmass += truncated_poisson_pmf(p.lambda_r, p.r0, p.r1, m);
        out.push_back(check("truncated_pmf_normalization", tmass - 1.0, policy.tail_mass_eps,
                            "serving-count law"));
        const ChiZeta cz = chi_zeta(p.r1);
        for (double r : {25.0, 50.0, 75.0}) {
            double cmass = 0.0;
            for (int np = 0; np <= 30; ++np) cmass += cond_user_count_pmf(np, 2, r, p.lambda_u, p.r1);
            out.push_back(check("cond_user_pmf_normalization_r" + std::to_string(int(r)),
                                cmass - 1.0, policy.tail_mass_eps, "n_u = 2"));
            double rmass = 0.0;
            for (int np = 1; np <= 40; ++np)
                rmass += cond_rrh_count_pmf(np, 3, r, p.lambda_r, p.r1, cz.rederived);
            out.push_back(check("cond_rrh_pmf_normalization_r" + std::to_string(int(r)),
                                rmass - 1.0, policy.tail_mass_eps, "n_r = 3"));
        }
    }
    {  // outer-interference mean vs the closed-form point-process mean
        NetworkParams p;
        p.alpha = 3.0;
        const double mu_r = annulus_mean(p.lambda_r, p.r0, p.r1);
        const double mu_u = annulus_mean(p.lambda_u, p.r0, p.r1);
        const ZTable zt(p.antennas, policy.series_limit(mu_r), ZMomentMode::printed);
        double norm = 0.0, ez = 0.0;
        for (int m = 1; m <= policy.series_limit(mu_r); ++m) norm += poisson_pmf(m, mu_r);
        for (int m = 1; m <= policy.series_limit(mu_r); ++m)
            ez += poisson_pmf(m, mu_r) / norm * zt[m].mean();
        const double campbell =
            2.0 * kPi * p.lambda_r * mu_u * ez * std::pow(p.r1, 2.0 - p.alpha) / (p.alpha - 2.0);
        const PhiPI2 pi2(p, policy, zt);
        const double h = 1e-3 / campbell;
        const double fd = pi2(h).imag() / h;
        out.push_back(check("phi_pi2_campbell_mean", fd / campbell - 1.0, 0.02,
                            "finite-difference CF mean vs Campbell"));
    }
    {  // determinism across worker counts
        NetworkParams p;
        p.alpha = 3.0;
        const SimWindow w{3.0 * p.r1};
        const SinrSamples a = simulate_sinr(p, SimMode::exact, 200, w, {7, 0}, {1});
        const SinrSamples b = simulate_sinr(p, SimMode::exact, 200, w, {7, 0}, {2});
        double max_diff = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            max_diff = std::max(max_diff, std::abs(a.values[i] - b.values[i]));
        out.push_back(check("determinism_worker_count", max_diff, 0.0, "bit-identical samples"));
    }
    return out;
}

}  // namespace cranjt
