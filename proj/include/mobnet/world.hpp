#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "mobnet/config.hpp"
#include "mobnet/rng.hpp"

namespace mobnet {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

/// Position on the L x L torus and direction of travel.
/// Invariants: 0 <= x, y < L; heading in (-pi, pi].
struct Kinematics {
    Point pos;
    double heading = 0.0;

    bool operator==(const Kinematics&) const = default;
};

/// Half-width of the per-step heading perturbation.
inline constexpr double kMaxTurn = std::numbers::pi / 3.0;

/// Places N nodes uniformly on [0, L)^2 with headings uniform on [-pi, pi).
/// Validates the config first.
std::vector<Kinematics> init_world(const SimConfig& config, Rng& rng);

/// Moves every node by `speed` along its current heading, then perturbs the
/// heading by an independent uniform draw on [-pi/3, pi/3].
void step_positions(std::span<Kinematics> world, const SimConfig& config, Rng& rng);

/// Maps a coordinate back into [0, side).
double wrap_coordinate(double value, double side);

/// Reduces an angle into (-pi, pi].
double reduce_angle(double theta);

/// Minimum-image Euclidean distance on the torus of the given side.
inline double toroidal_distance(Point a, Point b, double area_side) {
    double dx = std::fabs(a.x - b.x);
    double dy = std::fabs(a.y - b.y);
    if (dx > area_side - dx) dx = area_side - dx;
    if (dy > area_side - dy) dy = area_side - dy;
    return std::sqrt(dx * dx + dy * dy);
}

}  // namespace mobnet
