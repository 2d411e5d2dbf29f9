#include "cranjt/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cranjt {

namespace {
constexpr double kPi = std::numbers::pi;
}

double dist(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double norm(const Vec2& v) {
    return std::hypot(v.x, v.y);
}

PointSet sample_ppp(double intensity, const SimWindow& window, std::mt19937_64& rng) {
    PointSet out;
    if (!(intensity > 0.0) || !(window.radius > 0.0)) return out;
    const double mean = intensity * kPi * window.radius * window.radius;
    std::poisson_distribution<long> count(mean);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const long n = count(rng);
    out.pts.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double r = window.radius * std::sqrt(unit(rng));
        const double phi = 2.0 * kPi * unit(rng);
        out.pts.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return out;
}

PointSet sample_ppp(double intensity, const SimWindow& window, const SeedSpec& seed) {
    std::mt19937_64 rng(stream_seed(seed));
    return sample_ppp(intensity, window, rng);
}

PointSet sample_users(double intensity, const SimWindow& window, const PointSet& rrhs,
                      double r0, std::mt19937_64& rng) {
    PointSet candidates = sample_ppp(intensity, window, rng);
    if (rrhs.empty()) return candidates;
    PointSet out;
    out.pts.reserve(candidates.size());
    const double r0sq = r0 * r0;
    for (const Vec2& u : candidates.pts) {
        bool excluded = false;
        for (const Vec2& x : rrhs.pts) {
            const double dx = u.x - x.x;
            const double dy = u.y - x.y;
            if (dx * dx + dy * dy < r0sq) {
                excluded = true;
                break;
            }
        }
        if (!excluded) out.pts.push_back(u);
    }
    return out;
}

PointSet sample_users(double intensity, const SimWindow& window, const PointSet& rrhs,
                      double r0, const SeedSpec& seed) {
    std::mt19937_64 rng(stream_seed(seed));
    return sample_users(intensity, window, rrhs, r0, rng);
}

Assignment build_assignment(const PointSet& rrhs, const PointSet& users, double r1) {
    Assignment a;
    a.serving.resize(users.size());
    a.served.resize(rrhs.size());
    const double r1sq = r1 * r1;
    for (std::size_t j = 0; j < users.size(); ++j) {
        for (std::size_t i = 0; i < rrhs.size(); ++i) {
            const double dx = users.pts[j].x - rrhs.pts[i].x;
            const double dy = users.pts[j].y - rrhs.pts[i].y;
            if (dx * dx + dy * dy <= r1sq) {
                a.serving[j].push_back(static_cast<int>(i));
                a.served[i].push_back(static_cast<int>(j));
            }
        }
    }
    return a;
}

double lens_area_exact(double d, double r1) {
    if (d < 0.0) throw std::invalid_argument("lens_area_exact: d must be nonnegative");
    if (d >= 2.0 * r1) return 0.0;
    return 2.0 * r1 * r1 * std::acos(d / (2.0 * r1)) - 0.5 * d * std::sqrt(4.0 * r1 * r1 - d * d);
}

double lens_area_linearized(double r, double r1) {
    if (r < 0.0) throw std::invalid_argument("lens_area_linearized: r must be nonnegative");
    return std::max(0.0, kPi * r1 * r1 * (1.0 - 2.0 * r / (kPi * r1)));
}

double lens_distance_for_area(double area, double r1) {
    const double full = kPi * r1 * r1;
    if (area >= full) return 0.0;
    if (area <= 0.0) return 2.0 * r1;
    double lo = 0.0, hi = 2.0 * r1;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (lens_area_exact(mid, r1) > area)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double disk_intersection_area(double d, double ra, double rb) {
    if (d >= ra + rb) return 0.0;
    const double rmin = std::min(ra, rb);
    if (d <= std::abs(ra - rb)) return kPi * rmin * rmin;
    auto clamp1 = [](double x) { return std::clamp(x, -1.0, 1.0); };
    const double ca = clamp1((d * d + ra * ra - rb * rb) / (2.0 * d * ra));
    const double cb = clamp1((d * d + rb * rb - ra * ra) / (2.0 * d * rb));
    const double k = (-d + ra + rb) * (d + ra - rb) * (d - ra + rb) * (d + ra + rb);
    return ra * ra * std::acos(ca) + rb * rb * std::acos(cb) - 0.5 * std::sqrt(std::max(0.0, k));
}

double default_window_radius(const NetworkParams& p) {
    return p.r1 + 4.0 / std::sqrt(kPi * p.lambda_u);
}

}  // namespace cranjt
