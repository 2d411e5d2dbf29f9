#include "cranjt/gamma_moments.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "cranjt/parallel.hpp"

namespace cranjt {

GammaParams gamma_params(int antennas, int n_serving) {
    if (antennas < 1) throw std::invalid_argument("gamma_params: antennas must be at least 1");
    if (n_serving < 1) throw std::invalid_argument("gamma_params: n_serving must be at least 1");
    const double m = antennas;
    const double n = n_serving;
    if (n_serving == 1) {
        const double k = (m * m + 2.0 * m - 1.0) / (2.0 * m);
        return {k, 1.0 / k};
    }
    const double k = (m * n - 1.0) / (3.0 * m * n * (n - 1.0));
    const double s = 3.0 * (n - 1.0) / (n * (m * n - 1.0));
    return {k, s};
}

RatioMoments ratio_moments_oracle(int antennas, int n_serving, long n_samples,
                                  const SeedSpec& seed, int workers) {
    if (n_samples < 1) throw std::invalid_argument("ratio_moments_oracle: n_samples must be positive");
    const int m = antennas;
    const int n = n_serving;
    constexpr long kBlock = 16384;
    const long n_blocks = (n_samples + kBlock - 1) / kBlock;

    std::vector<double> sum(n_blocks, 0.0), sumsq(n_blocks, 0.0);
    parallel_for(n_blocks, workers, [&](long b) {
        std::mt19937_64 rng(stream_seed({seed.master, seed.realization * 1000003ULL + static_cast<std::uint64_t>(b)}));
        std::exponential_distribution<double> exp1(1.0);
        const long lo = b * kBlock;
        const long hi = std::min(n_samples, lo + kBlock);
        double s1 = 0.0, s2 = 0.0;
        for (long it = lo; it < hi; ++it) {
            double num = 0.0, den = 0.0;
            for (int k = 0; k < m; ++k) {
                const double e = exp1(rng);  // |h_ijk|^2 of the tagged RRH
                num += e * exp1(rng);        // times |h_ij*k|^2
                den += e;
            }
            for (int i = 1; i < n; ++i)
                for (int k = 0; k < m; ++k) den += exp1(rng);
            const double z = num / den;
            s1 += z;
            s2 += z * z;
        }
        sum[b] = s1;
        sumsq[b] = s2;
    });

    double s1 = 0.0, s2 = 0.0;
    for (long b = 0; b < n_blocks; ++b) {
        s1 += sum[b];
        s2 += sumsq[b];
    }
    RatioMoments out;
    out.n_samples = n_samples;
    out.mean = s1 / static_cast<double>(n_samples);
    out.variance = s2 / static_cast<double>(n_samples) - out.mean * out.mean;
    return out;
}

ZTable::ZTable(int antennas, int n_max, ZMomentMode mode, std::uint64_t oracle_seed,
               long oracle_samples, int workers)
    : mode_(mode) {
    if (n_max < 1) throw std::invalid_argument("ZTable: n_max must be at least 1");
    table_.reserve(static_cast<std::size_t>(n_max));
    for (int n = 1; n <= n_max; ++n) {
        if (mode == ZMomentMode::printed) {
            table_.push_back(gamma_params(antennas, n));
        } else {
            const SeedSpec s{oracle_seed, static_cast<std::uint64_t>(antennas) * 131071ULL + n};
            const RatioMoments mom = ratio_moments_oracle(antennas, n, oracle_samples, s, workers);
            table_.push_back({mom.mean * mom.mean / mom.variance, mom.variance / mom.mean});
        }
    }
}

const GammaParams& ZTable::operator[](int n_serving) const {
    if (n_serving < 1) throw std::invalid_argument("ZTable: n_serving must be at least 1");
    const std::size_t idx = std::min<std::size_t>(table_.size(), static_cast<std::size_t>(n_serving)) - 1;
    return table_[idx];
}

}  // namespace cranjt
