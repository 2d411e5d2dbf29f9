#include "cranjt/setstats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cranjt/geometry.hpp"
#include "cranjt/stats.hpp"

namespace cranjt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double annulus_poisson_pmf(double density, double r0, double r1, int n) {
    if (n < 0) throw std::invalid_argument("annulus_poisson_pmf: n must be nonnegative");
    return poisson_pmf(n, annulus_mean(density, r0, r1));
}

double truncated_poisson_pmf(double density, double r0, double r1, int m) {
    if (m < 1) throw std::invalid_argument("truncated_poisson_pmf: truncated support starts at 1");
    const double mu = annulus_mean(density, r0, r1);
    return poisson_pmf(m, mu) / (1.0 - std::exp(-mu));
}

double LensLine::fraction(double r) const {
    return std::clamp(chi + zeta * r, 0.0, 1.0);
}

ChiZeta chi_zeta(double r1) {
    ChiZeta out;
    const double full = kPi * r1 * r1;
    const double f0 = lens_area_exact(0.5 * r1, r1) / full;
    const double f1 = lens_area_exact(std::sqrt(5.0) / 2.0 * r1, r1) / full;
    out.rederived = {f0, (f1 - f0) / r1};
    const double chi_p = 2.0 * std::acos(std::sqrt(5.0) / 4.0) - 1.25 * std::sqrt(4.0 - 0.25);
    const double zeta_p = (chi_p - 2.0 * std::acos(0.25) + 0.25 * std::sqrt(4.0 - 0.25)) / r1;
    out.printed = {chi_p, zeta_p};
    return out;
}

double cond_user_count_pmf_area(int n_uprime, int n_u, double shared_area, double lambda_u,
                                double r1) {
    if (n_uprime < 0 || n_u < 0)
        throw std::invalid_argument("cond_user_count_pmf: counts must be nonnegative");
    const double disk = kPi * r1 * r1;
    const double a_shared = std::clamp(shared_area, 0.0, disk);
    const double mu_shared = lambda_u * a_shared;
    const double mu_excl = lambda_u * (disk - a_shared);
    double num = 0.0;
    for (int k = 0; k <= std::min(n_u, n_uprime); ++k)
        num += poisson_pmf(n_u - k, mu_excl) * poisson_pmf(k, mu_shared) *
               poisson_pmf(n_uprime - k, mu_excl);
    return num / poisson_pmf(n_u, lambda_u * disk);
}

double cond_user_count_pmf(int n_uprime, int n_u, double r, double lambda_u, double r1) {
    return cond_user_count_pmf_area(n_uprime, n_u, lens_area_linearized(r, r1), lambda_u, r1);
}

double cond_rrh_count_pmf_area(int n_rprime, int n_r, double shared_area, double lambda_r,
                               double r1) {
    if (n_rprime < 1) throw std::invalid_argument("cond_rrh_count_pmf: user j must have >=1 serving RRH");
    if (n_r < 1) throw std::invalid_argument("cond_rrh_count_pmf: tagged user must have >=1 serving RRH");
    const double disk = kPi * r1 * r1;
    const double a_shared = std::clamp(shared_area, 0.0, disk);
    const double mu_shared = lambda_r * a_shared;
    const double mu_excl = lambda_r * (disk - a_shared);
    double num = 0.0;
    for (int k = 1; k <= std::min(n_r, n_rprime); ++k)
        num += poisson_pmf(n_r - k, mu_excl) * poisson_pmf(k, mu_shared) *
               poisson_pmf(n_rprime - k, mu_excl);
    double den = 0.0;
    for (int k = 1; k <= n_r; ++k) den += poisson_pmf(k, mu_shared) * poisson_pmf(n_r - k, mu_excl);
    return num / den;
}

double cond_rrh_count_pmf(int n_rprime, int n_r, double r, double lambda_r, double r1,
                          const LensLine& lens) {
    return cond_rrh_count_pmf_area(n_rprime, n_r, lens.fraction(r) * kPi * r1 * r1, lambda_r, r1);
}

CondPmfCache::CondPmfCache(const NetworkParams& params, const TruncationPolicy& policy,
                           std::vector<double> r_grid, const LensLine& lens)
    : r_grid_(std::move(r_grid)) {
    const double mu_u_disk = disk_mean(params.lambda_u, params.r1);
    const double mu_r_disk = disk_mean(params.lambda_r, params.r1);
    user_cond_max_ = policy.series_limit(mu_u_disk);
    rrh_cond_max_ = policy.series_limit(mu_r_disk);
    // n' ranges over shared + exclusive counts; cover both tails.
    user_prime_max_ = std::min(policy.max_terms, 2 * policy.series_limit(mu_u_disk));
    rrh_prime_max_ = std::min(policy.max_terms, 2 * policy.series_limit(mu_r_disk));

    const std::size_t nodes = r_grid_.size();
    user_rows_.assign(nodes * (user_cond_max_ + 1) * (user_prime_max_ + 1), 0.0);
    rrh_rows_.assign(nodes * rrh_cond_max_ * rrh_prime_max_, 0.0);
    for (std::size_t node = 0; node < nodes; ++node) {
        const double r = r_grid_[node];
        for (int n = 0; n <= user_cond_max_; ++n) {
            double* row = &user_rows_[(node * (user_cond_max_ + 1) + n) * (user_prime_max_ + 1)];
            for (int np = 0; np <= user_prime_max_; ++np)
                row[np] = cond_user_count_pmf(np, n, r, params.lambda_u, params.r1);
        }
        for (int n = 1; n <= rrh_cond_max_; ++n) {
            double* row = &rrh_rows_[(node * rrh_cond_max_ + (n - 1)) * rrh_prime_max_];
            for (int np = 1; np <= rrh_prime_max_; ++np)
                row[np - 1] = cond_rrh_count_pmf(np, n, r, params.lambda_r, params.r1, lens);
        }
    }
}

std::span<const double> CondPmfCache::user_row(int node, int n_u) const {
    return {&user_rows_[(static_cast<std::size_t>(node) * (user_cond_max_ + 1) + n_u) *
                        (user_prime_max_ + 1)],
            static_cast<std::size_t>(user_prime_max_ + 1)};
}

std::span<const double> CondPmfCache::rrh_row(int node, int n_r) const {
    return {&rrh_rows_[(static_cast<std::size_t>(node) * rrh_cond_max_ + (n_r - 1)) * rrh_prime_max_],
            static_cast<std::size_t>(rrh_prime_max_)};
}

}  // namespace cranjt
