#include "cranjt/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cranjt/parallel.hpp"
#include "cranjt/stats.hpp"

namespace cranjt {

namespace {

bool has_point_within(const PointSet& pts, const Vec2& center, double radius) {
    const double r2 = radius * radius;
    for (const Vec2& p : pts.pts) {
        const double dx = p.x - center.x, dy = p.y - center.y;
        if (dx * dx + dy * dy < r2) return true;
    }
    return false;
}

/// RRH process conditioned on origin lying outside every exclusion disk, user
/// process thinned around the RRHs, centric user inserted at index 0.
void sample_topology(const NetworkParams& params, const SimWindow& window, std::mt19937_64& rng,
                     PointSet& rrhs, PointSet& users) {
    do {
        rrhs = sample_ppp(params.lambda_r, window, rng);
    } while (has_point_within(rrhs, {0.0, 0.0}, params.r0));
    const SimWindow user_window{std::max(0.0, window.radius - params.r1)};
    users = sample_users(params.lambda_u, user_window, rrhs, params.r0, rng);
    users.pts.insert(users.pts.begin(), Vec2{0.0, 0.0});
}

PowerSplit gamma_mode_split(const NetworkRealization& real, const Assignment& assign,
                            int target_user, const NetworkParams& params, std::mt19937_64& rng,
                            const ZTable& ztable) {
    PowerSplit out;
    out.noise = params.noise_w;
    const Vec2 tgt = real.users.pts[target_user];
    std::vector<char> in_target_set(real.rrhs.size(), 0);
    for (int i : assign.serving[target_user]) in_target_set[i] = 1;

    std::gamma_distribution<double> useful_gamma(static_cast<double>(params.antennas), 1.0);
    for (int i : assign.serving[target_user])
        out.useful += useful_gamma(rng) * std::pow(dist(real.rrhs.pts[i], tgt), -params.alpha);

    for (std::size_t j = 0; j < real.users.pts.size(); ++j) {
        if (static_cast<int>(j) == target_user) continue;
        const auto& servers = assign.serving[j];
        if (servers.empty()) continue;
        const GammaParams& zp = ztable[static_cast<int>(servers.size())];
        std::gamma_distribution<double> zdist(zp.shape, zp.scale);
        for (int i : servers) {
            const double term = zdist(rng) * std::pow(dist(real.rrhs.pts[i], tgt), -params.alpha);
            if (in_target_set[i])
                out.inset += term;
            else
                out.outset += term;
        }
    }
    return out;
}

PowerSplit no_cross_split(const NetworkRealization& real, const Assignment& assign,
                          int target_user, const NetworkParams& params) {
    PowerSplit out;
    out.noise = params.noise_w;
    const int m = real.fading.antennas;
    const Vec2 tgt = real.users.pts[target_user];
    std::vector<char> in_target_set(real.rrhs.size(), 0);
    for (int i : assign.serving[target_user]) in_target_set[i] = 1;

    for (int i : assign.serving[target_user]) {
        double habs2 = 0.0;
        for (int k = 0; k < m; ++k) habs2 += std::norm(real.fading.at(i, target_user, k));
        out.useful += habs2 * std::pow(dist(real.rrhs.pts[i], tgt), -params.alpha);
    }

    for (std::size_t j = 0; j < real.users.pts.size(); ++j) {
        if (static_cast<int>(j) == target_user) continue;
        const auto& servers = assign.serving[j];
        if (servers.empty()) continue;
        double gj2 = 0.0;
        for (int i : servers) {
            const double pl = std::pow(dist(real.rrhs.pts[i], real.users.pts[j]), -params.alpha);
            for (int k = 0; k < m; ++k) gj2 += std::norm(real.fading.at(i, static_cast<int>(j), k)) * pl;
        }
        for (int i : servers) {
            const double pl_ij = std::pow(dist(real.rrhs.pts[i], real.users.pts[j]), -params.alpha);
            double num = 0.0;
            for (int k = 0; k < m; ++k)
                num += std::norm(real.fading.at(i, static_cast<int>(j), k)) *
                       std::norm(real.fading.at(i, target_user, k));
            const double term =
                num * pl_ij / gj2 * std::pow(dist(real.rrhs.pts[i], tgt), -params.alpha);
            if (in_target_set[i])
                out.inset += term;
            else
                out.outset += term;
        }
    }
    return out;
}

}  // namespace

PowerSplit received_power_mode(const NetworkRealization& real, const Assignment& assign,
                               int target_user, SimMode mode, const NetworkParams& params,
                               std::mt19937_64& rng, const ZTable* ztable) {
    switch (mode) {
        case SimMode::exact: {
            const MrtWeights weights = mrt_weights(real, assign, params.alpha);
            return received_power_exact(real, assign, weights, target_user, params.alpha,
                                        params.noise_w);
        }
        case SimMode::no_cross_terms:
            return no_cross_split(real, assign, target_user, params);
        case SimMode::gamma_approx: {
            if (ztable == nullptr)
                throw std::invalid_argument("received_power_mode: gamma_approx needs a Z table");
            return gamma_mode_split(real, assign, target_user, params, rng, *ztable);
        }
    }
    throw std::logic_error("received_power_mode: unknown mode");
}

double sinr_from_split(const PowerSplit& split) {
    if (split.useful <= 0.0) return 0.0;
    const double denom = split.inset + split.outset + split.noise;
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return split.useful / denom;
}

SinrSamples simulate_sinr(const NetworkParams& params, SimMode mode, long n_realizations,
                          const SimWindow& window, const SeedSpec& seed,
                          const EngineOptions& options) {
    validate(params);
    if (window.radius < params.r1)
        throw std::invalid_argument("simulate_sinr: window radius must be at least r1");

    const double mu_r = annulus_mean(params.lambda_r, params.r0, params.r1);
    const ZTable ztable = mode == SimMode::gamma_approx
                              ? ZTable(params.antennas, TruncationPolicy{}.series_limit(mu_r),
                                       options.z_mode)
                              : ZTable(1, 1, ZMomentMode::printed);

    SinrSamples out;
    out.mode = mode;
    out.params = params;
    out.window = window;
    out.n_realizations = n_realizations;
    out.values.resize(static_cast<std::size_t>(n_realizations));

    parallel_for(n_realizations, options.workers, [&](long idx) {
        std::mt19937_64 rng(stream_seed({seed.master, static_cast<std::uint64_t>(idx)}));
        NetworkRealization real;
        sample_topology(params, window, rng, real.rrhs, real.users);
        const Assignment assign = build_assignment(real.rrhs, real.users, params.r1);
        if (assign.serving[0].empty()) {
            out.values[idx] = 0.0;
            return;
        }
        if (mode != SimMode::gamma_approx)
            real.fading = sample_fading(static_cast<int>(real.rrhs.size()),
                                        static_cast<int>(real.users.size()), params.antennas, rng);
        const PowerSplit split =
            received_power_mode(real, assign, 0, mode, params, rng, &ztable);
        out.values[idx] = sinr_from_split(split);
    });
    return out;
}

CoverageCurve empirical_coverage(const SinrSamples& samples, std::span<const double> thetas) {
    for (std::size_t i = 1; i < thetas.size(); ++i)
        if (thetas[i] < thetas[i - 1])
            throw std::invalid_argument("empirical_coverage: thetas must be sorted ascending");
    CoverageCurve out;
    out.source = "empirical";
    out.params = samples.params;
    out.n_samples = samples.n_realizations;
    out.thetas.assign(thetas.begin(), thetas.end());
    out.probs.resize(thetas.size());
    out.half_width.resize(thetas.size());
    const double n = static_cast<double>(samples.values.size());
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        long count = 0;
        for (double v : samples.values) count += v > thetas[k] ? 1 : 0;
        out.probs[k] = count / n;
        out.half_width[k] = wilson_halfwidth(static_cast<double>(count), n);
    }
    return out;
}

InterferenceRatioResult interference_ratio(const NetworkParams& params, long n_realizations,
                                           const SimWindow& window, const SeedSpec& seed,
                                           const EngineOptions& options) {
    validate(params);
    const double mu_r = annulus_mean(params.lambda_r, params.r0, params.r1);
    const ZTable ztable(params.antennas, TruncationPolicy{}.series_limit(mu_r), options.z_mode);

    struct Acc {
        double i1 = 0, i2 = 0, i1sq = 0, i2sq = 0, i12 = 0, ratio_sum = 0;
        long zero_outset = 0;
    };
    constexpr long kBlock = 4096;
    const long n_blocks = (n_realizations + kBlock - 1) / kBlock;
    std::vector<Acc> acc(n_blocks);

    parallel_for(n_blocks, options.workers, [&](long b) {
        Acc a;
        const long lo = b * kBlock;
        const long hi = std::min(n_realizations, lo + kBlock);
        for (long idx = lo; idx < hi; ++idx) {
            std::mt19937_64 rng(stream_seed({seed.master, static_cast<std::uint64_t>(idx)}));
            NetworkRealization real;
            sample_topology(params, window, rng, real.rrhs, real.users);
            const Assignment assign = build_assignment(real.rrhs, real.users, params.r1);
            const PowerSplit split = gamma_mode_split(real, assign, 0, params, rng, ztable);
            a.i1 += split.inset;
            a.i2 += split.outset;
            a.i1sq += split.inset * split.inset;
            a.i2sq += split.outset * split.outset;
            a.i12 += split.inset * split.outset;
            if (split.outset == 0.0)
                ++a.zero_outset;
            else
                a.ratio_sum += split.inset / split.outset;
        }
        acc[b] = a;
    });

    Acc tot;
    for (const Acc& a : acc) {
        tot.i1 += a.i1;
        tot.i2 += a.i2;
        tot.i1sq += a.i1sq;
        tot.i2sq += a.i2sq;
        tot.i12 += a.i12;
        tot.ratio_sum += a.ratio_sum;
        tot.zero_outset += a.zero_outset;
    }
    InterferenceRatioResult out;
    out.n_realizations = n_realizations;
    out.zero_outset = tot.zero_outset;
    const double n = static_cast<double>(n_realizations);
    out.mean_inset = tot.i1 / n;
    out.mean_outset = tot.i2 / n;
    if (n_realizations > tot.zero_outset)
        out.mean_of_ratio = tot.ratio_sum / static_cast<double>(n_realizations - tot.zero_outset);
    if (out.mean_outset <= 0.0) {
        out.ratio = std::numeric_limits<double>::infinity();
        return out;
    }
    out.ratio = out.mean_inset / out.mean_outset;
    const double v1 = tot.i1sq / n - out.mean_inset * out.mean_inset;
    const double v2 = tot.i2sq / n - out.mean_outset * out.mean_outset;
    const double c12 = tot.i12 / n - out.mean_inset * out.mean_outset;
    const double rel_var = v1 / (out.mean_inset * out.mean_inset) +
                           v2 / (out.mean_outset * out.mean_outset) -
                           2.0 * c12 / (out.mean_inset * out.mean_outset);
    out.se_ratio = out.ratio * std::sqrt(std::max(0.0, rel_var) / n);
    return out;
}

SetCountHistogram empirical_set_counts(const NetworkParams& params, double r, long n_realizations,
                                       const SeedSpec& seed, const SetCountOptions& options) {
    validate(params);
    SetCountHistogram hist;
    hist.r = r;
    hist.user_sep = options.user_sep >= 0.0 ? options.user_sep : r;
    hist.rrh_sep = options.rrh_sep >= 0.0 ? options.rrh_sep
                                          : std::sqrt(r * r + 0.25 * params.r1 * params.r1);
    hist.n_max = options.n_max;
    const int cells = options.n_max + 1;
    hist.user_joint.assign(static_cast<std::size_t>(cells) * cells, 0);
    hist.rrh_joint.assign(static_cast<std::size_t>(cells) * cells, 0);
    hist.user_marginal.assign(cells, 0);
    hist.rrh_marginal.assign(cells, 0);
    hist.realizations = n_realizations;

    constexpr long kBlock = 4096;
    const long n_blocks = (n_realizations + kBlock - 1) / kBlock;
    struct Block {
        std::vector<long> uj, rj, um, rm;
        long lens_empty = 0;
    };
    std::vector<Block> blocks(n_blocks);

    const double r1 = params.r1;
    auto count_disk = [&](const PointSet& pts, double cx) {
        int n = 0;
        for (const Vec2& p : pts.pts) {
            const double dx = p.x - cx;
            if (dx * dx + p.y * p.y <= r1 * r1) ++n;
        }
        return n;
    };

    parallel_for(n_blocks, options.workers, [&](long b) {
        Block blk;
        blk.uj.assign(static_cast<std::size_t>(cells) * cells, 0);
        blk.rj.assign(static_cast<std::size_t>(cells) * cells, 0);
        blk.um.assign(cells, 0);
        blk.rm.assign(cells, 0);
        const long lo = b * kBlock;
        const long hi = std::min(n_realizations, lo + kBlock);
        for (long idx = lo; idx < hi; ++idx) {
            std::mt19937_64 rng(stream_seed({seed.master, static_cast<std::uint64_t>(idx)}));
            const SimWindow uw{hist.user_sep + r1};
            const PointSet upts = sample_ppp(params.lambda_u, uw, rng);
            const int nu = std::min(options.n_max, count_disk(upts, 0.0));
            const int nup = std::min(options.n_max, count_disk(upts, hist.user_sep));
            blk.um[nu]++;
            blk.uj[static_cast<std::size_t>(nu) * cells + nup]++;

            const SimWindow rw{hist.rrh_sep + r1};
            const PointSet rpts = sample_ppp(params.lambda_r, rw, rng);
            int nr = 0, nrp = 0, overlap = 0;
            for (const Vec2& p : rpts.pts) {
                const bool in0 = p.x * p.x + p.y * p.y <= r1 * r1;
                const double dx = p.x - hist.rrh_sep;
                const bool in1 = dx * dx + p.y * p.y <= r1 * r1;
                nr += in0;
                nrp += in1;
                overlap += in0 && in1;
            }
            nr = std::min(options.n_max, nr);
            nrp = std::min(options.n_max, nrp);
            blk.rm[nr]++;
            if (overlap >= 1)
                blk.rj[static_cast<std::size_t>(nr) * cells + nrp]++;
            else
                blk.lens_empty++;
        }
        blocks[b] = std::move(blk);
    });

    for (const Block& blk : blocks) {
        for (std::size_t i = 0; i < hist.user_joint.size(); ++i) {
            hist.user_joint[i] += blk.uj[i];
            hist.rrh_joint[i] += blk.rj[i];
        }
        for (int i = 0; i < cells; ++i) {
            hist.user_marginal[i] += blk.um[i];
            hist.rrh_marginal[i] += blk.rm[i];
        }
        hist.rrh_lens_empty += blk.lens_empty;
    }
    return hist;
}

}  // namespace cranjt
