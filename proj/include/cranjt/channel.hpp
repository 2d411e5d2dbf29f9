#pragma once

#include <complex>
#include <random>
#include <vector>

#include "cranjt/geometry.hpp"
#include "cranjt/params.hpp"

namespace cranjt {

using cplx = std::complex<double>;

/// Rayleigh fading coefficients h[i][j][k] for RRH i, user j, antenna k.
/// Entries are i.i.d. circularly-symmetric complex Gaussian with E|h|^2 = 1.
struct FadingTensor {
    int n_rrh = 0;
    int n_user = 0;
    int antennas = 0;
    std::vector<cplx> h;

    const cplx& at(int i, int j, int k) const {
        return h[(static_cast<std::size_t>(i) * n_user + j) * antennas + k];
    }
    cplx& at(int i, int j, int k) {
        return h[(static_cast<std::size_t>(i) * n_user + j) * antennas + k];
    }
};

FadingTensor sample_fading(int n_rrh, int n_user, int antennas, std::mt19937_64& rng);
FadingTensor sample_fading(int n_rrh, int n_user, int antennas, const SeedSpec& seed);

/// One sampled topology plus its fading draw.
struct NetworkRealization {
    PointSet rrhs;
    PointSet users;
    FadingTensor fading;
};

/// Maximum ratio transmission weights with the joint per-user normalization:
/// w_ij = g_ij^H / |g_j| where g_j stacks the amplitude channels of all RRHs
/// serving user j, so each user's total allocated power is exactly 1.
struct MrtWeights {
    /// w[j] holds, for each serving RRH (in Assignment::serving[j] order),
    /// the `antennas` weight coefficients. Empty for users with no server.
    std::vector<std::vector<cplx>> w;
    /// |g_j|^2, the squared norm of the stacked channel of user j.
    std::vector<double> gnorm2;
};

MrtWeights mrt_weights(const NetworkRealization& real, const Assignment& assign, double alpha);

/// Received power at one user split by origin. In exact mode `inset` carries
/// the cross term between in-set and out-of-set partial sums and may be
/// negative; `inset + outset` always equals the exact aggregate interference.
struct PowerSplit {
    double useful = 0.0;
    double inset = 0.0;
    double outset = 0.0;
    double noise = 0.0;
    bool inset_signed = false;
};

PowerSplit received_power_exact(const NetworkRealization& real, const Assignment& assign,
                                const MrtWeights& weights, int target_user, double alpha,
                                double noise_w);

}  // namespace cranjt
