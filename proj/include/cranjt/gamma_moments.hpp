#pragma once

#include <vector>

#include "cranjt/params.hpp"

namespace cranjt {

/// Shape/scale pair of the moment-matched interference coefficient.
struct GammaParams {
    double shape = 1.0;
    double scale = 1.0;

    double mean() const { return shape * scale; }
    double variance() const { return shape * scale * scale; }
};

/// Closed-form shape/scale for the normalized interference coefficient of a
/// user served by `n_serving` RRHs with `antennas` antennas each, as printed.
GammaParams gamma_params(int antennas, int n_serving);

struct RatioMoments {
    double mean = 0.0;
    double variance = 0.0;
    long n_samples = 0;
};

/// Monte Carlo moments of Z = sum_k |h_ijk|^2 |h_ij*k|^2 / sum_i' sum_k |h_i'jk|^2
/// under the equal-distance assumption, with all fading i.i.d. unit-mean
/// exponential magnitudes. Deterministic for a fixed seed and worker count
/// independent (block-seeded, reduced in block order).
RatioMoments ratio_moments_oracle(int antennas, int n_serving, long n_samples,
                                  const SeedSpec& seed, int workers = 0);

enum class ZMomentMode {
    printed,    ///< the closed forms of gamma_params, verbatim
    empirical,  ///< (mean^2/var, var/mean) from ratio_moments_oracle
};

/// Per-N table of interference-coefficient Gamma parameters, N = 1..n_max.
/// Lookups beyond n_max clamp to the last entry.
class ZTable {
  public:
    ZTable(int antennas, int n_max, ZMomentMode mode, std::uint64_t oracle_seed = 0x5eedf00dULL,
           long oracle_samples = 200000, int workers = 0);

    const GammaParams& operator[](int n_serving) const;
    int n_max() const { return static_cast<int>(table_.size()); }
    ZMomentMode mode() const { return mode_; }

  private:
    std::vector<GammaParams> table_;
    ZMomentMode mode_;
};

}  // namespace cranjt
