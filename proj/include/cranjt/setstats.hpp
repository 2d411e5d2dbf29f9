#pragma once

#include <span>
#include <vector>

#include "cranjt/params.hpp"

namespace cranjt {

/// Poisson pmf of the node count in the cooperation annulus [r0, r1].
double annulus_poisson_pmf(double density, double r0, double r1, int n);

/// Poisson pmf conditioned on at least one node (a served user has at least
/// one serving RRH). Throws for m < 1.
double truncated_poisson_pmf(double density, double r0, double r1, int m);

/// Usable overlap fraction of the serving disk of an interfering user,
/// modeled as the linear form chi + zeta*r in the tagged RRH's distance r,
/// clamped to [0, 1] on use.
struct LensLine {
    double chi = 1.0;
    double zeta = 0.0;

    double fraction(double r) const;
};

struct ChiZeta {
    LensLine rederived;  ///< line through the exact lens fractions at r = 0 and r = r1
    LensLine printed;    ///< the closed forms as printed (chi comes out negative)
};

/// Both the printed closed forms and a numeric re-derivation: the overlap is
/// evaluated with the exact lens formula at center distance sqrt(r^2 + r1^2/4)
/// (second user at the average position r1/2, right angle) at r = 0 and r = r1,
/// and a line is fit through those two fractions.
ChiZeta chi_zeta(double r1);

/// P(n_uprime users around the serving RRH | n_u users around the tagged user),
/// disks of radius r1 with centers r apart; shared-region mean from the
/// linearized lens area, exclusive regions carry the complement so the three
/// region means are consistent with the full-disk denominator.
double cond_user_count_pmf(int n_uprime, int n_u, double r, double lambda_u, double r1);

/// Same conditional with an explicitly supplied shared-region area (e.g. the
/// exact lens), for diagnostics.
double cond_user_count_pmf_area(int n_uprime, int n_u, double shared_area, double lambda_u,
                                double r1);

/// P(n_rprime RRHs serving the interfering user | n_r RRHs serving the tagged
/// user), shared count at least 1 (the tagged RRH serves both). Throws for
/// n_rprime < 1 or n_r < 1.
double cond_rrh_count_pmf(int n_rprime, int n_r, double r, double lambda_r, double r1,
                          const LensLine& lens);
double cond_rrh_count_pmf_area(int n_rprime, int n_r, double shared_area, double lambda_r,
                               double r1);

/// Conditional pmf rows tabulated over a fixed radial grid, built once and
/// shared by the quadrature hot loop.
class CondPmfCache {
  public:
    CondPmfCache(const NetworkParams& params, const TruncationPolicy& policy,
                 std::vector<double> r_grid, const LensLine& lens);

    /// pmf over n_uprime = 0..user_prime_max() for the node-th grid point.
    std::span<const double> user_row(int node, int n_u) const;
    /// pmf over n_rprime = 1..rrh_prime_max() for the node-th grid point.
    std::span<const double> rrh_row(int node, int n_r) const;

    int user_cond_max() const { return user_cond_max_; }
    int user_prime_max() const { return user_prime_max_; }
    int rrh_cond_max() const { return rrh_cond_max_; }
    int rrh_prime_max() const { return rrh_prime_max_; }
    const std::vector<double>& r_grid() const { return r_grid_; }

  private:
    std::vector<double> r_grid_;
    int user_cond_max_, user_prime_max_, rrh_cond_max_, rrh_prime_max_;
    std::vector<double> user_rows_;  // [node][n_u][n_uprime]
    std::vector<double> rrh_rows_;   // [node][n_r-1][n_rprime-1]
};

}  // namespace cranjt
