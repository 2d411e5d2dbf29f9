#pragma once

#include <random>
#include <vector>

#include "cranjt/params.hpp"

namespace cranjt {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

double dist(const Vec2& a, const Vec2& b);
double norm(const Vec2& v);

struct PointSet {
    std::vector<Vec2> pts;

    std::size_t size() const { return pts.size(); }
    bool empty() const { return pts.empty(); }
};

/// Disk centered at the origin approximating the infinite plane.
struct SimWindow {
    double radius = 0.0;
};

/// Homogeneous PPP on the window: Poisson count, uniform positions.
PointSet sample_ppp(double intensity, const SimWindow& window, std::mt19937_64& rng);
PointSet sample_ppp(double intensity, const SimWindow& window, const SeedSpec& seed);

/// User process: a PPP on the window thinned by the exclusion disks of
/// radius r0 around every RRH.
PointSet sample_users(double intensity, const SimWindow& window, const PointSet& rrhs,
                      double r0, std::mt19937_64& rng);
PointSet sample_users(double intensity, const SimWindow& window, const PointSet& rrhs,
                      double r0, const SeedSpec& seed);

/// Serving relation by the distance rule: RRH i serves user j iff
/// dist(i, j) <= r1. `serving[j]` and `served[i]` index into the input sets.
struct Assignment {
    std::vector<std::vector<int>> serving;  ///< cooperative set per user
    std::vector<std::vector<int>> served;   ///< served users per RRH
};

Assignment build_assignment(const PointSet& rrhs, const PointSet& users, double r1);

/// Intersection area of two disks of common radius r1 whose centers are d apart.
double lens_area_exact(double d, double r1);

/// First-order expansion of the lens area around d = 0, clamped at zero where
/// the linear form goes negative (d >= pi*r1/2).
double lens_area_linearized(double r, double r1);

/// Inverse of lens_area_exact in the center distance, by bisection.
double lens_distance_for_area(double area, double r1);

/// Intersection area of two disks of radii ra and rb with centers d apart.
double disk_intersection_area(double d, double ra, double rb);

/// Default simulation window radius: r1 + 4/sqrt(pi*lambda_u). Users are
/// sampled on the window shrunk by r1 so every sampled user has its full
/// cooperation disk inside the RRH window.
double default_window_radius(const NetworkParams& p);

}  // namespace cranjt
