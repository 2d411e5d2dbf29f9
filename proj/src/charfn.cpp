#include "cranjt/charfn.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cranjt/geometry.hpp"
#include "cranjt/quadrature.hpp"
#include "cranjt/stats.hpp"

namespace cranjt {

namespace {

constexpr double kPi = std::numbers::pi;

// (1 - j*x)^(-k) on the principal branch; the base has positive real part so
// no cut is crossed.
cplx inv_pow_one_minus_jx(double x, double k) {
    const double mod = std::exp(-0.5 * k * std::log1p(x * x));
    const double ph = k * std::atan(x);
    return {mod * std::cos(ph), mod * std::sin(ph)};
}

// Poisson pmf vector 0..n_max.
std::vector<double> poisson_row(double mean, int n_max) {
    std::vector<double> out(n_max + 1);
    for (int n = 0; n <= n_max; ++n) out[n] = poisson_pmf(n, mean);
    return out;
}

// Smallest index whose cumulative mass reaches 1 - eps, capped.
int mass_cut(const std::vector<double>& pmf, double eps) {
    double acc = 0.0;
    for (std::size_t n = 0; n < pmf.size(); ++n) {
        acc += pmf[n];
        if (acc >= 1.0 - eps) return static_cast<int>(n);
    }
    return static_cast<int>(pmf.size()) - 1;
}

}  // namespace

cplx phi_s(double t, double r, int antennas, double alpha) {
    if (!(r > 0.0)) throw std::invalid_argument("phi_s: r must be positive");
    return inv_pow_one_minus_jx(t * std::pow(r, -alpha), static_cast<double>(antennas));
}

cplx phi_v(double t, double r, const GammaParams& z, double alpha) {
    if (!(r > 0.0)) throw std::invalid_argument("phi_v: r must be positive");
    return inv_pow_one_minus_jx(t * std::pow(r, -alpha) * z.scale, z.shape);
}

CfContext::CfContext(const NetworkParams& params, const TruncationPolicy& policy,
                     const ZTable& ztable)
    : params_(params), policy_(policy), ztable_(ztable), lens_(chi_zeta(params.r1).rederived) {
    const double mu_r = annulus_mean(params.lambda_r, params.r0, params.r1);
    const double mu_u = annulus_mean(params.lambda_u, params.r0, params.r1);
    p_nr_ = poisson_row(mu_r, policy.series_limit(mu_r));
    p_nu_ = poisson_row(mu_u, policy.series_limit(mu_u));
    n_r_max_ = mass_cut(p_nr_, policy.tail_mass_eps);
    n_u_max_ = mass_cut(p_nu_, policy.tail_mass_eps);

    double mass_r = 0.0, mass_u = 0.0;
    for (int n = 1; n <= n_r_max_; ++n) mass_r += p_nr_[n];
    for (int n = 0; n <= n_u_max_; ++n) mass_u += p_nu_[n];
    stratum_mass_ = mass_r * mass_u;
    truncation_residual_ = (1.0 - p_nr_[0] - mass_r) + (1.0 - mass_u);

    // Composite Gauss-Legendre radial rule with the serving-distance density
    // f_r = 2r/(r1^2 - r0^2) folded into the weights.
    constexpr int kPanels = 4;
    constexpr int kOrder = 20;
    const double f_norm = 2.0 / (params.r1 * params.r1 - params.r0 * params.r0);
    for (int p = 0; p < kPanels; ++p) {
        const double a = params.r0 + (params.r1 - params.r0) * p / kPanels;
        const double b = params.r0 + (params.r1 - params.r0) * (p + 1) / kPanels;
        const GaussRule rule = gauss_legendre(kOrder, a, b);
        for (int i = 0; i < kOrder; ++i) {
            nodes_.push_back(rule.nodes[i]);
            weights_.push_back(rule.weights[i] * f_norm * rule.nodes[i]);
        }
    }
    pmf_cache_ = std::make_unique<CondPmfCache>(params, policy, nodes_, lens_);
    if (pmf_cache_->rrh_cond_max() < n_r_max_ || pmf_cache_->user_cond_max() < n_u_max_)
        throw std::logic_error("CfContext: pmf cache does not cover the strata range");
}

cplx CfContext::phi_t_from_rows(double t, double r, std::span<const double> user_row,
                                std::span<const double> rrh_row) const {
    cplx inner(0.0, 0.0);
    for (std::size_t m = 0; m < rrh_row.size(); ++m)
        inner += rrh_row[m] * phi_v(t, r, ztable_[static_cast<int>(m) + 1], params_.alpha);
    cplx acc(0.0, 0.0), pw(1.0, 0.0);
    for (std::size_t q = 0; q < user_row.size(); ++q) {
        acc += user_row[q] * pw;
        pw *= inner;
    }
    return acc;
}

cplx CfContext::phi_t(double t, int n_r, int n_u, double r) const {
    if (n_r < 1) throw std::invalid_argument("phi_t: n_r must be at least 1");
    if (n_u < 0) throw std::invalid_argument("phi_t: n_u must be nonnegative");
    std::vector<double> user_row(pmf_cache_->user_prime_max() + 1);
    for (std::size_t q = 0; q < user_row.size(); ++q)
        user_row[q] = cond_user_count_pmf(static_cast<int>(q), n_u, r, params_.lambda_u, params_.r1);
    std::vector<double> rrh_row(pmf_cache_->rrh_prime_max());
    for (std::size_t m = 0; m < rrh_row.size(); ++m)
        rrh_row[m] =
            cond_rrh_count_pmf(static_cast<int>(m) + 1, n_r, r, params_.lambda_r, params_.r1, lens_);
    return phi_t_from_rows(t, r, user_row, rrh_row);
}

cplx CfContext::phi_pu_prime(double t, double theta, int n_r, int n_u) const {
    if (n_r == 0) return {1.0, 0.0};
    if (n_r < 0 || n_u < 0) throw std::invalid_argument("phi_pu_prime: negative set count");
    const bool cached = n_r <= pmf_cache_->rrh_cond_max() && n_u <= pmf_cache_->user_cond_max();
    cplx avg(0.0, 0.0);
    for (std::size_t node = 0; node < nodes_.size(); ++node) {
        const double r = nodes_[node];
        const cplx s = phi_s(t, r, params_.antennas, params_.alpha);
        const cplx tt =
            cached ? phi_t_from_rows(-theta * t, r, pmf_cache_->user_row(static_cast<int>(node), n_u),
                                     pmf_cache_->rrh_row(static_cast<int>(node), n_r))
                   : phi_t(-theta * t, n_r, n_u, r);
        avg += weights_[node] * s * tt;
    }
    cplx out(1.0, 0.0);
    for (int q = 0; q < n_r; ++q) out *= avg;
    return out;
}

cplx CfContext::mixture_cf(double t, double theta) const {
    const int mp = pmf_cache_->rrh_prime_max();
    const int up = pmf_cache_->user_prime_max();
    // radial sums per stratum
    std::vector<cplx> acc(static_cast<std::size_t>(n_r_max_) * (n_u_max_ + 1), cplx(0.0, 0.0));
    std::vector<cplx> phiv(mp);
    std::vector<cplx> powers(up + 1);
    for (std::size_t node = 0; node < nodes_.size(); ++node) {
        const double r = nodes_[node];
        const cplx sw = weights_[node] * phi_s(t, r, params_.antennas, params_.alpha);
        const double u = std::pow(r, -params_.alpha);
        for (int m = 1; m <= mp; ++m) {
            const GammaParams& z = ztable_[m];
            phiv[m - 1] = inv_pow_one_minus_jx(-theta * t * u * z.scale, z.shape);
        }
        for (int nr = 1; nr <= n_r_max_; ++nr) {
            const auto rrow = pmf_cache_->rrh_row(static_cast<int>(node), nr);
            cplx inner(0.0, 0.0);
            for (int m = 0; m < mp; ++m) inner += rrow[m] * phiv[m];
            powers[0] = {1.0, 0.0};
            for (int q = 1; q <= up; ++q) powers[q] = powers[q - 1] * inner;
            for (int nu = 0; nu <= n_u_max_; ++nu) {
                const auto urow = pmf_cache_->user_row(static_cast<int>(node), nu);
                cplx phit(0.0, 0.0);
                for (int q = 0; q <= up; ++q) phit += urow[q] * powers[q];
                acc[static_cast<std::size_t>(nr - 1) * (n_u_max_ + 1) + nu] += sw * phit;
            }
        }
    }
    cplx total(0.0, 0.0);
    for (int nr = 1; nr <= n_r_max_; ++nr) {
        for (int nu = 0; nu <= n_u_max_; ++nu) {
            const cplx avg = acc[static_cast<std::size_t>(nr - 1) * (n_u_max_ + 1) + nu];
            cplx pw(1.0, 0.0);
            for (int q = 0; q < nr; ++q) pw *= avg;
            total += p_nr_[nr] * p_nu_[nu] * pw;
        }
    }
    return total;
}

PhiPI2::PhiPI2(const NetworkParams& params, const TruncationPolicy& policy, const ZTable& ztable,
               Options options)
    : params_(params), policy_(policy), opt_(options) {
    if (opt_.user_window_radius > 0.0 && opt_.r_max <= 0.0)
        opt_.r_max = opt_.user_window_radius + params.r1;
    if (opt_.r_max > 0.0 && opt_.r_max <= params.r1)
        throw std::invalid_argument("PhiPI2: r_max must exceed r1");

    const double mu_r = annulus_mean(params.lambda_r, params.r0, params.r1);
    mu_user_ = annulus_mean(params.lambda_u, params.r0, params.r1);

    const int m_max = policy.series_limit(mu_r);
    p_trunc_.resize(m_max);
    double norm = 0.0;
    for (int m = 1; m <= m_max; ++m) {
        p_trunc_[m - 1] = poisson_pmf(m, mu_r);
        norm += p_trunc_[m - 1];
    }
    for (double& p : p_trunc_) p /= norm;  // keep phi_Y(0) exactly 1 under truncation
    ztab_.reserve(m_max);
    for (int m = 1; m <= m_max; ++m) ztab_.push_back(ztable[m]);

    p_user_ = poisson_row(mu_user_, policy.series_limit(mu_user_));

    // Expansion phi_Y(x) = 1 + b1 x + b2 x^2 + b3 x^3 + O(x^4) for the
    // near-zero part of the radial integrand (the integrable endpoint
    // singularity u^(-2/alpha) concentrates mass there for alpha near 2).
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    for (int m = 0; m < m_max; ++m) {
        const double k = ztab_[m].shape, s = ztab_[m].scale;
        e1 += p_trunc_[m] * k * s;
        e2 += p_trunc_[m] * k * (k + 1.0) * s * s;
        e3 += p_trunc_[m] * k * (k + 1.0) * (k + 2.0) * s * s * s;
    }
    b1_ = cplx(0.0, e1);
    b2_ = cplx(-0.5 * e2, 0.0);
    b3_ = cplx(0.0, -e3 / 6.0);
    double en = 0.0, ec2 = 0.0, ec3 = 0.0;
    for (std::size_t n = 1; n < p_user_.size(); ++n) {
        const double nn = static_cast<double>(n);
        en += p_user_[n] * nn;
        ec2 += p_user_[n] * nn * (nn - 1.0) * 0.5;
        ec3 += p_user_[n] * nn * (nn - 1.0) * (nn - 2.0) / 6.0;
    }
    c1_ = -en * b1_;
    c2_ = -(en * b2_ + ec2 * b1_ * b1_);
    c3_ = -(en * b3_ + 2.0 * ec2 * b1_ * b2_ + ec3 * b1_ * b1_ * b1_);

    u_hi_ = std::pow(params.r1, -params.alpha);
    u_lo_ = opt_.r_max > 0.0 ? std::pow(opt_.r_max, -params.alpha) : 0.0;
}

cplx PhiPI2::radial_integral(double t) const {
    const double alpha = params_.alpha;
    const int n_max = static_cast<int>(p_user_.size()) - 1;
    const double full_disk = kPi * params_.r1 * params_.r1;

    double s_max = 0.0;
    for (const auto& z : ztab_) s_max = std::max(s_max, z.scale);

    auto phi_y = [&](double x) {
        cplx acc(0.0, 0.0);
        for (std::size_t m = 0; m < ztab_.size(); ++m)
            acc += p_trunc_[m] * inv_pow_one_minus_jx(x * ztab_[m].scale, ztab_[m].shape);
        return acc;
    };
    auto summed = [&](double u) {
        const cplx z = phi_y(t * u);
        double mu = mu_user_;
        const double* pn = p_user_.data();
        std::vector<double> local;
        if (opt_.user_window_radius > 0.0) {
            const double r = std::pow(u, -1.0 / alpha);
            const double frac =
                disk_intersection_area(r, params_.r1, opt_.user_window_radius) / full_disk;
            mu = mu_user_ * frac;
            local.resize(n_max + 1);
            for (int n = 0; n <= n_max; ++n) local[n] = poisson_pmf(n, mu);
            pn = local.data();
        }
        cplx acc(0.0, 0.0);
        cplx zp = z;
        for (int n = 1; n <= n_max; ++n) {
            acc += pn[n] * (cplx(1.0, 0.0) - zp);
            zp *= z;
        }
        return acc;
    };

    cplx total(0.0, 0.0);
    double lo = u_lo_;
    if (u_lo_ <= 0.0) {
        // analytic expansion on [0, u_c], valid while |t u s| stays small
        const double u_c =
            std::min(u_hi_, std::abs(t) > 0.0 ? 0.05 / (std::abs(t) * s_max) : u_hi_);
        const cplx coeffs[3] = {c1_, c2_, c3_};
        for (int p = 1; p <= 3; ++p) {
            const double e = p - 2.0 / alpha;
            total += coeffs[p - 1] * std::pow(t, p) * std::pow(u_c, e) / (e * alpha);
        }
        lo = u_c;
    }
    if (lo < u_hi_) {
        const double va = std::log(lo), vb = std::log(u_hi_);
        const auto f = [&](double v) {
            const double u = std::exp(v);
            return summed(u) * std::exp(-2.0 * v / alpha) / alpha;
        };
        const QuadResultC q =
            integrate_adaptive(f, va, vb, 0.3 * policy_.quad_rel_tol,
                               1e-13 / (2.0 * kPi * params_.lambda_r), 400000);
        total += q.value;
    }
    return total;
}

cplx PhiPI2::operator()(double t) const {
    if (t == 0.0) return {1.0, 0.0};
    const cplx integral = radial_integral(t);
    return std::exp(-2.0 * kPi * params_.lambda_r * integral);
}

}  // namespace cranjt
