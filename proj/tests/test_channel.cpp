#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cranjt/channel.hpp"
#include "cranjt/geometry.hpp"
#include "test_util.hpp"

using namespace cranjt;

namespace {

NetworkRealization make_realization(std::vector<Vec2> rrhs, std::vector<Vec2> users, int antennas,
                                    std::uint64_t seed) {
    NetworkRealization real;
    real.rrhs.pts = std::move(rrhs);
    real.users.pts = std::move(users);
    real.fading = sample_fading(static_cast<int>(real.rrhs.size()),
                                static_cast<int>(real.users.size()), antennas, SeedSpec{seed, 0});
    return real;
}

}  // namespace

TEST_CASE("fading magnitudes follow a unit-mean exponential law") {
    std::mt19937_64 rng(stream_seed({101, 0}));
    const long n = 1000000;
    std::vector<double> mags;
    mags.reserve(n);
    std::complex<double> mean_h(0.0, 0.0);
    const FadingTensor t = sample_fading(100, 100, 100, rng);  // 1e6 coefficients
    for (const cplx& v : t.h) {
        mags.push_back(std::norm(v));
        mean_h += v;
    }
    double mean = 0.0;
    for (double m : mags) mean += m;
    mean /= static_cast<double>(n);
    CHECK(mean > 0.997);
    CHECK(mean < 1.003);
    CHECK(std::abs(mean_h) / static_cast<double>(n) <= 0.003);

    const double ks = testutil::ks_statistic(mags, [](double x) { return 1.0 - std::exp(-x); });
    CHECK(ks < 0.005);
}

TEST_CASE("single serving RRH gets the full unit power budget") {
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto real = make_realization({{30.0, 0.0}}, {{0.0, 0.0}}, 3, 200 + s);
        const Assignment a = build_assignment(real.rrhs, real.users, 100.0);
        const MrtWeights w = mrt_weights(real, a, 3.0);
        double total = 0.0;
        for (const cplx& c : w.w[0]) total += std::norm(c);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("equal channel norms split the power budget evenly") {
    auto real = make_realization({{30.0, 0.0}, {0.0, 30.0}}, {{0.0, 0.0}}, 2, 7);
    // overwrite fading so both serving channels have identical norms
    real.fading.at(0, 0, 0) = {1.0, 0.0};
    real.fading.at(0, 0, 1) = {0.0, 1.0};
    real.fading.at(1, 0, 0) = {0.0, -1.0};
    real.fading.at(1, 0, 1) = {1.0, 0.0};
    const Assignment a = build_assignment(real.rrhs, real.users, 100.0);
    const MrtWeights w = mrt_weights(real, a, 3.0);
    double share0 = 0.0, share1 = 0.0;
    for (int k = 0; k < 2; ++k) {
        share0 += std::norm(w.w[0][0 * 2 + k]);
        share1 += std::norm(w.w[0][1 * 2 + k]);
    }
    CHECK(share0 == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(share1 == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("per-user budgets are exactly one and shares follow channel quality") {
    std::mt19937_64 rng(stream_seed({321, 5}));
    std::uniform_real_distribution<double> pos(-80.0, 80.0);
    std::vector<Vec2> rrhs, users;
    for (int i = 0; i < 5; ++i) rrhs.push_back({pos(rng), pos(rng)});
    for (int j = 0; j < 3; ++j) users.push_back({pos(rng), pos(rng)});
    auto real = make_realization(rrhs, users, 2, 404);
    const Assignment a = build_assignment(real.rrhs, real.users, 150.0);
    const MrtWeights w = mrt_weights(real, a, 3.0);
    for (std::size_t j = 0; j < users.size(); ++j) {
        if (a.serving[j].empty()) continue;
        double total = 0.0;
        for (const cplx& c : w.w[j]) total += std::norm(c);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        // per-RRH share equals its squared channel norm over the stacked norm
        for (std::size_t s = 0; s < a.serving[j].size(); ++s) {
            const int i = a.serving[j][s];
            double g2 = 0.0;
            const double pl = std::pow(dist(real.rrhs.pts[i], real.users.pts[j]), -3.0);
            for (int k = 0; k < 2; ++k)
                g2 += std::norm(real.fading.at(i, static_cast<int>(j), k)) * pl;
            double share = 0.0;
            for (int k = 0; k < 2; ++k) share += std::norm(w.w[j][s * 2 + k]);
            CHECK(share == doctest::Approx(g2 / w.gnorm2[j]).epsilon(1e-12));
        }
    }
}

TEST_CASE("no interfering users means no interference") {
    auto real = make_realization({{40.0, 0.0}}, {{0.0, 0.0}}, 1, 11);
    const Assignment a = build_assignment(real.rrhs, real.users, 100.0);
    const MrtWeights w = mrt_weights(real, a, 3.0);
    const PowerSplit split = received_power_exact(real, a, w, 0, 3.0, 0.0);
    CHECK(split.inset == 0.0);
    CHECK(split.outset == 0.0);
    CHECK(split.useful > 0.0);
}

TEST_CASE("single serving RRH useful power is the faded path gain") {
    const double alpha = 3.0, r = 25.0;
    for (std::uint64_t s = 0; s < 30; ++s) {
        auto real = make_realization({{r, 0.0}}, {{0.0, 0.0}}, 1, 600 + s);
        const Assignment a = build_assignment(real.rrhs, real.users, 100.0);
        const MrtWeights w = mrt_weights(real, a, alpha);
        const PowerSplit split = received_power_exact(real, a, w, 0, alpha, 0.0);
        const double expected = std::norm(real.fading.at(0, 0, 0)) * std::pow(r, -alpha);
        CHECK(split.useful == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("power split sums to the unsplit received power on random instances") {
    // independent oracle: total interference per user from the raw signal
    // model, with no in/out-of-set bookkeeping
    std::mt19937_64 rng(stream_seed({555, 1}));
    std::uniform_real_distribution<double> pos(-150.0, 150.0);
    const double alpha = 3.5, r1 = 120.0;
    const int antennas = 2;
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Vec2> rrhs, users;
        for (int i = 0; i < 12; ++i) rrhs.push_back({pos(rng), pos(rng)});
        users.push_back({0.0, 0.0});
        for (int j = 0; j < 7; ++j) users.push_back({pos(rng), pos(rng)});
        auto real = make_realization(rrhs, users, antennas, 700 + trial);
        const Assignment a = build_assignment(real.rrhs, real.users, r1);
        if (a.serving[0].empty()) continue;
        const MrtWeights w = mrt_weights(real, a, alpha);
        const PowerSplit split = received_power_exact(real, a, w, 0, alpha, 0.0);

        double oracle_interf = 0.0;
        for (std::size_t j = 1; j < users.size(); ++j) {
            if (a.serving[j].empty()) continue;
            cplx amp(0.0, 0.0);
            for (std::size_t s = 0; s < a.serving[j].size(); ++s) {
                const int i = a.serving[j][s];
                const double plamp = std::pow(dist(real.rrhs.pts[i], users[0]), -alpha / 2.0);
                for (int k = 0; k < antennas; ++k)
                    amp += w.w[j][s * antennas + k] * real.fading.at(i, 0, k) * plamp;
            }
            oracle_interf += std::norm(amp);
        }
        const double total = split.inset + split.outset;
        CHECK(total == doctest::Approx(oracle_interf).epsilon(1e-10));
        CHECK(split.useful == doctest::Approx(w.gnorm2[0]).epsilon(1e-10));
    }
}

TEST_CASE("mean useful power increases with the antenna count at fixed geometry") {
    const double alpha = 3.0;
    std::vector<Vec2> rrhs = {{20.0, 0.0}, {-35.0, 10.0}, {5.0, 60.0}};
    std::vector<Vec2> users = {{0.0, 0.0}, {30.0, 30.0}};
    double prev_mean = 0.0;
    for (int m : {1, 2, 4}) {
        double sum = 0.0;
        const int n = 10000;
        for (int s = 0; s < n; ++s) {
            auto real = make_realization(rrhs, users, m, 900 + s);
            const Assignment a = build_assignment(real.rrhs, real.users, 100.0);
            const MrtWeights w = mrt_weights(real, a, alpha);
            sum += received_power_exact(real, a, w, 0, alpha, 0.0).useful;
        }
        const double mean = sum / n;
        CHECK(mean > prev_mean);
        prev_mean = mean;
    }
}

TEST_CASE("distant non-serving interference respects the mean bound") {
    // all interference reaching the origin comes from RRHs beyond d_min, so
    // the mean out-of-set power is bounded by (#interfering pairs) * d_min^-alpha
    const double alpha = 3.0, d_min = 200.0;
    std::vector<Vec2> rrhs = {{30.0, 0.0}, {250.0, 0.0}, {0.0, 220.0}};
    std::vector<Vec2> users = {{0.0, 0.0}, {260.0, 10.0}, {10.0, 230.0}};
    double sum_out = 0.0;
    const int n = 20000;
    for (int s = 0; s < n; ++s) {
        auto real = make_realization(rrhs, users, 1, 1500 + s);
        const Assignment a = build_assignment(real.rrhs, real.users, 100.0);
        const MrtWeights w = mrt_weights(real, a, alpha);
        sum_out += received_power_exact(real, a, w, 0, alpha, 0.0).outset;
    }
    const double bound = 2.0 * std::pow(d_min, -alpha);  // two interfering pairs, unit budgets
    CHECK(sum_out / n <= bound);
}
