#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cranjt/charfn.hpp"
#include "cranjt/geometry.hpp"
#include "cranjt/gil_pelaez.hpp"
#include "cranjt/quadrature.hpp"
#include "cranjt/stats.hpp"
#include "test_util.hpp"

using namespace cranjt;

namespace {

constexpr double kPi = std::numbers::pi;

NetworkParams fig5(double alpha = 2.01, int antennas = 1) {
    NetworkParams p;
    p.lambda_r = 1.27e-4;
    p.lambda_u = 3.18e-5;
    p.antennas = antennas;
    p.alpha = alpha;
    return p;
}

}  // namespace

TEST_CASE("phi_s basics: unit value at zero, closed form, modulus bound, symmetry") {
    CHECK(phi_s(0.0, 30.0, 3, 3.0) == cplx(1.0, 0.0));
    const cplx v = phi_s(1.0, 1.0, 1, 3.0);
    CHECK(v.real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(0.5).epsilon(1e-14));
    for (double t : {-50.0, -1.0, -0.1, 0.3, 2.0, 1e3}) {
        const cplx a = phi_s(t, 20.0, 2, 2.5);
        CHECK(std::abs(a) <= 1.0 + 1e-14);
        const cplx b = phi_s(-t, 20.0, 2, 2.5);
        CHECK(std::abs(b - std::conj(a)) < 1e-14);
    }
}

TEST_CASE("inverting phi_s reproduces the Gamma distribution of the useful power") {
    const int m = 2;
    const double r = 2.0, alpha = 3.0;
    const double scale = std::pow(r, -alpha);
    TruncationPolicy policy;
    for (double x : {0.2, 0.5, 1.0, 2.0, 4.0}) {
        const double q = x * scale;
        const auto cf = [&](double t) { return phi_s(t, r, m, alpha); };
        const double p = gil_pelaez(cf, q, policy).prob;
        const double exact = std::exp(-x) * (1.0 + x);  // Erlang-2 exceedance at x scale units
        CHECK(std::abs(p - exact) < 1e-5);
    }
}

TEST_CASE("phi_v reduces to phi_s when a single single-antenna RRH serves") {
    const GammaParams z = gamma_params(1, 1);
    for (double t : {-3.0, -0.5, 0.0, 0.7, 12.0}) {
        CHECK(std::abs(phi_v(t, 40.0, z, 2.5) - phi_s(t, 40.0, 1, 2.5)) < 1e-14);
    }
}

TEST_CASE("phi_v finite-difference mean matches the Gamma mean") {
    const GammaParams z = gamma_params(2, 3);
    const double r = 30.0, alpha = 3.0;
    const double mean = z.mean() * std::pow(r, -alpha);
    const double h = 1e-4 / mean;
    const double fd = phi_v(h, r, z, alpha).imag() / h;
    CHECK(fd == doctest::Approx(mean).epsilon(1e-6));
}

TEST_CASE("phi_t is a valid characteristic function at the reference geometry") {
    const NetworkParams p = fig5();
    const TruncationPolicy policy;
    const ZTable zt(p.antennas, policy.series_limit(annulus_mean(p.lambda_r, p.r0, p.r1)),
                    ZMomentMode::printed);
    const CfContext cf(p, policy, zt);
    CHECK(std::abs(cf.phi_t(0.0, 2, 1, 50.0) - cplx(1.0, 0.0)) < 1e-9);
    for (double t : {-2e4, -100.0, 3.0, 777.0, 5e4}) {
        const cplx v = cf.phi_t(t, 2, 1, 50.0);
        CHECK(std::abs(v) <= 1.0 + 1e-12);
        CHECK(std::abs(cf.phi_t(-t, 2, 1, 50.0) - std::conj(v)) < 1e-12);
    }
}

TEST_CASE("phi_t collapses to one when no users share the serving RRH") {
    NetworkParams p = fig5();
    p.lambda_u = 1e-30;
    const TruncationPolicy policy;
    const ZTable zt(p.antennas, 8, ZMomentMode::printed);
    const CfContext cf(p, policy, zt);
    for (double t : {-1e4, -1.0, 0.5, 2e3})
        CHECK(std::abs(cf.phi_t(t, 3, 0, 40.0) - cplx(1.0, 0.0)) < 1e-9);
}

TEST_CASE("inverting phi_t matches a conditional draw of the per-RRH interference") {
    // Tagged serving RRH fixed at r = r1/2 with n_r = 2 and n_u = 1; users and
    // extra RRHs drawn as point processes, interference coefficients drawn
    // from the same Gamma surrogates the CF uses.
    const NetworkParams p = fig5(2.01, 1);
    const TruncationPolicy policy;
    const ZTable zt(p.antennas, policy.series_limit(annulus_mean(p.lambda_r, p.r0, p.r1)),
                    ZMomentMode::printed);
    const CfContext cf(p, policy, zt);
    const double r = 50.0;
    const double pl = std::pow(r, -p.alpha);

    std::mt19937_64 rng(stream_seed({60601, 0}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double probe_window = 2.0 * p.r1 + r;
    std::vector<double> samples;
    long atom_hits = 0;
    const long target = 60000;
    while (static_cast<long>(samples.size()) + atom_hits < target) {
        // users: exactly one in the tagged user's disk (rejection), plus the
        // unconstrained field outside it
        const PointSet users = sample_ppp(p.lambda_u, {probe_window}, rng);
        int inside = 0;
        for (const Vec2& u : users.pts) inside += norm(u) <= p.r1 ? 1 : 0;
        if (inside != 1) continue;
        // RRHs: the tagged one at (r, 0) plus exactly one more in the annulus
        const PointSet rrhs = sample_ppp(p.lambda_r, {probe_window}, rng);
        int in_annulus = 0;
        for (const Vec2& x : rrhs.pts) {
            const double d = norm(x);
            in_annulus += (d >= p.r0 && d <= p.r1) ? 1 : 0;
        }
        if (in_annulus != 1) continue;

        const Vec2 tagged{r, 0.0};
        double w = 0.0;
        for (const Vec2& u : users.pts) {
            if (dist(u, tagged) > p.r1) continue;
            int n_serving = 1;  // the tagged RRH itself
            for (const Vec2& x : rrhs.pts) n_serving += dist(u, x) <= p.r1 ? 1 : 0;
            const GammaParams& z = zt[n_serving];
            std::gamma_distribution<double> zdist(z.shape, z.scale);
            w += zdist(rng) * pl;
        }
        if (w == 0.0)
            ++atom_hits;
        else
            samples.push_back(w);
    }

    // model atom and continuous-part CF
    const double p0 = cond_user_count_pmf(0, 1, r, p.lambda_u, p.r1);
    const double atom_obs = static_cast<double>(atom_hits) / target;
    CHECK(std::abs(atom_obs - p0) < 0.05);

    const auto cf_cont = [&](double t) { return (cf.phi_t(t, 2, 1, r) - p0) / (1.0 - p0); };
    std::sort(samples.begin(), samples.end());
    // the mixture contains near-atomic Gamma components whose CF decays very
    // slowly; a few-permille inversion target is plenty for a 0.05 KS gate
    TruncationPolicy loose = policy;
    loose.quad_rel_tol = 4e-3;
    double worst = std::abs(atom_obs - p0);
    for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        const double w = samples[static_cast<std::size_t>(q * (samples.size() - 1))];
        const double model_exceed = gil_pelaez(cf_cont, w, loose).prob;
        worst = std::max(worst, std::abs(model_exceed - (1.0 - q)));
    }
    CHECK(worst < 0.05);
}

TEST_CASE("phi_pu_prime: empty product, conjugate symmetry") {
    const NetworkParams p = fig5();
    const TruncationPolicy policy;
    const ZTable zt(p.antennas, policy.series_limit(annulus_mean(p.lambda_r, p.r0, p.r1)),
                    ZMomentMode::printed);
    const CfContext cf(p, policy, zt);
    for (double t : {-5.0, 0.0, 1.7, 1e4}) CHECK(cf.phi_pu_prime(t, 1.0, 0, 2) == cplx(1.0, 0.0));

    for (double t : {1e-3, 0.6, 45.0, 2.2e4, 9e5}) {
        const cplx v = cf.phi_pu_prime(t, 1.0, 3, 1);
        const cplx w = cf.phi_pu_prime(-t, 1.0, 3, 1);
        CHECK(std::abs(w - std::conj(v)) < 1e-12);
        CHECK(std::abs(v) <= 1.0 + 1e-12);
    }
}

TEST_CASE("inverting phi_pu_prime at theta 0 matches the simulated useful power") {
    // n_r = 1: the useful power is one Gamma(M) draw at a density-weighted distance
    const NetworkParams p = fig5(2.01, 1);
    const TruncationPolicy policy;
    const ZTable zt(p.antennas, 4, ZMomentMode::printed);
    const CfContext cf(p, policy, zt);

    std::mt19937_64 rng(stream_seed({71717, 0}));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::gamma_distribution<double> g(p.antennas, 1.0);
    std::vector<double> samples;
    const long n = 100000;
    samples.reserve(n);
    for (long i = 0; i < n; ++i) {
        const double u = unit(rng);
        const double r = std::sqrt(p.r0 * p.r0 + (p.r1 * p.r1 - p.r0 * p.r0) * u);
        samples.push_back(g(rng) * std::pow(r, -p.alpha));
    }
    std::sort(samples.begin(), samples.end());
    const auto cf_pu = [&](double t) { return cf.phi_pu_prime(t, 0.0, 1, 0); };
    double worst = 0.0;
    for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double x = samples[static_cast<std::size_t>(q * (n - 1))];
        const double model = gil_pelaez(cf_pu, x, policy).prob;
        worst = std::max(worst, std::abs(model - (1.0 - q)));
    }
    CHECK(worst < 0.03);
}

TEST_CASE("mixture equals the pmf-weighted strata sum and mass at zero") {
    const NetworkParams p = fig5(3.0, 2);
    const TruncationPolicy policy;
    const ZTable zt(p.antennas, policy.series_limit(annulus_mean(p.lambda_r, p.r0, p.r1)),
                    ZMomentMode::printed);
    const CfContext cf(p, policy, zt);
    CHECK(std::abs(cf.mixture_cf(0.0, 1.0) - cplx(cf.stratum_mass(), 0.0)) < 1e-9);
    CHECK(cf.truncation_residual() < 2.0 * policy.tail_mass_eps);

    const double mu_r = annulus_mean(p.lambda_r, p.r0, p.r1);
    const double mu_u = annulus_mean(p.lambda_u, p.r0, p.r1);
    for (double t : {3.0, 900.0}) {
        cplx direct(0.0, 0.0);
        for (int nr = 1; nr <= 14; ++nr)
            for (int nu = 0; nu <= 8; ++nu)
                direct += poisson_pmf(nr, mu_r) * poisson_pmf(nu, mu_u) *
                          cf.phi_pu_prime(t, 1.0, nr, nu);
        CHECK(std::abs(cf.mixture_cf(t, 1.0) - direct) < 2e-4);
    }
}

TEST_CASE("phi_pi2 basics: unit at zero, vanishing interferers, modulus decay") {
    const NetworkParams p = fig5(2.01, 1);
    const TruncationPolicy policy;
    const ZTable zt(p.antennas, policy.series_limit(annulus_mean(p.lambda_r, p.r0, p.r1)),
                    ZMomentMode::printed);
    const PhiPI2 pi2(p, policy, zt);
    CHECK(pi2(0.0) == cplx(1.0, 0.0));

    NetworkParams empty = p;
    empty.lambda_u = 1e-30;
    const PhiPI2 pi2_empty(empty, policy, zt);
    for (double t : {-1e5, -3.0, 1.0, 8e4}) CHECK(std::abs(pi2_empty(t) - cplx(1.0, 0.0)) < 1e-9);

    double prev = 1.0;
    for (double t : {1.0, 10.0, 100.0, 1e3, 1e4, 1e5}) {
        const double a = std::abs(pi2(t));
        CHECK(a <= prev + 1e-12);
        CHECK(std::abs(pi2(-t) - std::conj(pi2(t))) < 1e-12);
        prev = a;
    }
}

TEST_CASE("phi_pi2 against a direct fixed-grid evaluation on a finite range") {
    // Independent oracle: Simpson quadrature in r on [r1, r_max] with the
    // served-count series collapsed through the Poisson generating function.
    NetworkParams p = fig5(3.0, 1);
    const TruncationPolicy policy;
    const double mu_r = annulus_mean(p.lambda_r, p.r0, p.r1);
    const double mu_u = annulus_mean(p.lambda_u, p.r0, p.r1);
    const int mmax = policy.series_limit(mu_r);
    const ZTable zt(p.antennas, mmax, ZMomentMode::printed);

    PhiPI2::Options opt;
    opt.r_max = 2000.0;
    const PhiPI2 pi2(p, policy, zt, opt);

    std::vector<double> ptrunc(mmax);
    double norm = 0.0;
    for (int m = 1; m <= mmax; ++m) {
        ptrunc[m - 1] = poisson_pmf(m, mu_r);
        norm += ptrunc[m - 1];
    }
    for (double& v : ptrunc) v /= norm;

    auto oracle = [&](double t) {
        const long steps = 400000;  // fine Simpson grid over [r1, r_max]
        const double h = (opt.r_max - p.r1) / steps;
        cplx acc(0.0, 0.0);
        for (long i = 0; i <= steps; ++i) {
            const double r = p.r1 + i * h;
            cplx phi_y(0.0, 0.0);
            for (int m = 1; m <= mmax; ++m)
                phi_y += ptrunc[m - 1] * phi_v(t, r, zt[m], p.alpha);
            const cplx g = 1.0 - std::exp(mu_u * (phi_y - 1.0));
            const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += w * g * r;
        }
        acc *= h / 3.0;
        return std::exp(-2.0 * kPi * p.lambda_r * acc);
    };

    for (double t : {3.0, 40.0, 1e3, -2e2}) {
        const cplx a = pi2(t);
        const cplx b = oracle(t);
        CHECK(std::abs(a - b) < 1e-6);
    }
}

TEST_CASE("phi_pi2 finite-difference mean matches the closed-form mean at a near-2 exponent") {
    // exercises the small-argument series that carries most of the mass when
    // the radial integrand is nearly non-integrable
    NetworkParams p = fig5(2.01, 1);
    const TruncationPolicy policy;
    const double mu_r = annulus_mean(p.lambda_r, p.r0, p.r1);
    const double mu_u = annulus_mean(p.lambda_u, p.r0, p.r1);
    const int mmax = policy.series_limit(mu_r);
    const ZTable zt(p.antennas, mmax, ZMomentMode::printed);
    const PhiPI2 pi2(p, policy, zt);

    double norm = 0.0, ez = 0.0;
    for (int m = 1; m <= mmax; ++m) norm += poisson_pmf(m, mu_r);
    for (int m = 1; m <= mmax; ++m) ez += poisson_pmf(m, mu_r) / norm * zt[m].mean();
    const double campbell =
        2.0 * kPi * p.lambda_r * mu_u * ez * std::pow(p.r1, 2.0 - p.alpha) / (p.alpha - 2.0);

    const double h = 1e-3 / campbell;
    const double fd = pi2(h).imag() / h;
    CHECK(fd == doctest::Approx(campbell).epsilon(0.02));
}

TEST_CASE("window-matched options cap the service means near the edge") {
    NetworkParams p = fig5(2.01, 1);
    const TruncationPolicy policy;
    const ZTable zt(p.antennas, policy.series_limit(annulus_mean(p.lambda_r, p.r0, p.r1)),
                    ZMomentMode::printed);
    PhiPI2::Options opt;
    opt.user_window_radius = 400.0;
    const PhiPI2 capped(p, policy, zt, opt);
    const PhiPI2 infinite(p, policy, zt);
    // less interference mass under the cap: the CF stays closer to 1
    const double t = 1e3;
    CHECK(std::abs(capped(t)) > std::abs(infinite(t)));
    CHECK(capped(0.0) == cplx(1.0, 0.0));
}
