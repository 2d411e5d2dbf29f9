#include "cranjt/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace cranjt {

FadingTensor sample_fading(int n_rrh, int n_user, int antennas, std::mt19937_64& rng) {
    FadingTensor t;
    t.n_rrh = n_rrh;
    t.n_user = n_user;
    t.antennas = antennas;
    t.h.resize(static_cast<std::size_t>(n_rrh) * n_user * antennas);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    for (auto& v : t.h) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v = cplx(re, im);
    }
    return t;
}

FadingTensor sample_fading(int n_rrh, int n_user, int antennas, const SeedSpec& seed) {
    std::mt19937_64 rng(stream_seed(seed));
    return sample_fading(n_rrh, n_user, antennas, rng);
}

MrtWeights mrt_weights(const NetworkRealization& real, const Assignment& assign, double alpha) {
    const int m = real.fading.antennas;
    MrtWeights out;
    out.w.resize(real.users.size());
    out.gnorm2.assign(real.users.size(), 0.0);
    for (std::size_t j = 0; j < real.users.size(); ++j) {
        const auto& servers = assign.serving[j];
        if (servers.empty()) continue;
        double g2 = 0.0;
        for (int i : servers) {
            const double pl = std::pow(dist(real.rrhs.pts[i], real.users.pts[j]), -alpha);
            for (int k = 0; k < m; ++k) g2 += std::norm(real.fading.at(i, static_cast<int>(j), k)) * pl;
        }
        if (!(g2 > 0.0)) throw std::runtime_error("mrt_weights: zero stacked channel norm");
        out.gnorm2[j] = g2;
        const double gnorm = std::sqrt(g2);
        auto& wj = out.w[j];
        wj.resize(servers.size() * m);
        for (std::size_t s = 0; s < servers.size(); ++s) {
            const int i = servers[s];
            const double amp = std::pow(dist(real.rrhs.pts[i], real.users.pts[j]), -alpha / 2.0);
            for (int k = 0; k < m; ++k)
                wj[s * m + k] = std::conj(real.fading.at(i, static_cast<int>(j), k)) * amp / gnorm;
        }
    }
    return out;
}

PowerSplit received_power_exact(const NetworkRealization& real, const Assignment& assign,
                                const MrtWeights& weights, int target_user, double alpha,
                                double noise_w) {
    if (target_user < 0 || static_cast<std::size_t>(target_user) >= real.users.size())
        throw std::invalid_argument("received_power_exact: no such target user");
    const int m = real.fading.antennas;
    const Vec2 tgt = real.users.pts[target_user];

    std::vector<char> in_target_set(real.rrhs.size(), 0);
    for (int i : assign.serving[target_user]) in_target_set[i] = 1;

    PowerSplit out;
    out.noise = noise_w;
    out.inset_signed = true;

    {
        cplx amp(0.0, 0.0);
        const auto& servers = assign.serving[target_user];
        const auto& wj = weights.w[target_user];
        for (std::size_t s = 0; s < servers.size(); ++s) {
            const int i = servers[s];
            const double pl_amp = std::pow(dist(real.rrhs.pts[i], tgt), -alpha / 2.0);
            for (int k = 0; k < m; ++k) amp += wj[s * m + k] * real.fading.at(i, target_user, k) * pl_amp;
        }
        out.useful = std::norm(amp);
    }

    for (std::size_t j = 0; j < real.users.size(); ++j) {
        if (static_cast<int>(j) == target_user) continue;
        const auto& servers = assign.serving[j];
        if (servers.empty()) continue;
        const auto& wj = weights.w[j];
        cplx amp_in(0.0, 0.0), amp_out(0.0, 0.0);
        for (std::size_t s = 0; s < servers.size(); ++s) {
            const int i = servers[s];
            const double pl_amp = std::pow(dist(real.rrhs.pts[i], tgt), -alpha / 2.0);
            cplx a(0.0, 0.0);
            for (int k = 0; k < m; ++k) a += wj[s * m + k] * real.fading.at(i, target_user, k) * pl_amp;
            if (in_target_set[i])
                amp_in += a;
            else
                amp_out += a;
        }
        // |in + out|^2 split: the cross term goes with the in-set share so the
        // two attributions always sum to the exact total.
        out.inset += std::norm(amp_in) + 2.0 * (amp_in * std::conj(amp_out)).real();
        out.outset += std::norm(amp_out);
    }
    return out;
}

}  // namespace cranjt
