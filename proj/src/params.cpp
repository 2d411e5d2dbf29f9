#include "cranjt/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cranjt {

const NetworkParams& validate(const NetworkParams& p) {
    if (!(p.lambda_r > 0.0)) throw std::invalid_argument("lambda_r must be positive");
    if (!(p.lambda_u > 0.0)) throw std::invalid_argument("lambda_u must be positive");
    if (p.antennas < 1) throw std::invalid_argument("antennas must be at least 1");
    if (!(p.alpha > 2.0)) throw std::invalid_argument("alpha must exceed 2");
    if (!(p.r0 > 0.0)) throw std::invalid_argument("r0 must be positive");
    if (!(p.r0 < p.r1)) throw std::invalid_argument("r0 < r1 violated");
    if (!(p.noise_w >= 0.0)) throw std::invalid_argument("noise_w must be nonnegative");
    return p;
}

double annulus_area(double r0, double r1) {
    return std::numbers::pi * (r1 * r1 - r0 * r0);
}

double annulus_mean(double density, double r0, double r1) {
    return density * annulus_area(r0, r1);
}

double disk_mean(double density, double radius) {
    return density * std::numbers::pi * radius * radius;
}

int TruncationPolicy::series_limit(double mean) const {
    if (!(mean > 0.0)) return 1;
    const double cut = mean + 8.0 * std::sqrt(mean) + 1.0;
    if (cut >= static_cast<double>(max_terms)) return max_terms;
    return static_cast<int>(std::ceil(cut));
}

void validate(const TruncationPolicy& policy) {
    if (!(policy.tail_mass_eps > 0.0 && policy.tail_mass_eps < 1e-3))
        throw std::invalid_argument("tail_mass_eps must lie in (0, 1e-3)");
    if (policy.max_terms < 1) throw std::invalid_argument("max_terms must be at least 1");
    if (!(policy.quad_rel_tol > 0.0)) throw std::invalid_argument("quad_rel_tol must be positive");
    if (!(policy.cf_tail_cut > 0.0)) throw std::invalid_argument("cf_tail_cut must be positive");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t stream_seed(const SeedSpec& seed) {
    return splitmix64(splitmix64(seed.master) ^ splitmix64(seed.realization + 0x51ed270b78f0de5fULL));
}

}  // namespace cranjt
