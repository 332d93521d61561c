#include "mobnet/world.hpp"

#include <cmath>

namespace mobnet {

std::vector<Kinematics> init_world(const SimConfig& config, Rng& rng) {
    validate(config);
    const double side = config.area_side;
    std::vector<Kinematics> world(config.n_nodes);
    for (auto& k : world) {
        k.pos.x = wrap_coordinate(rng.uniform(0.0, side), side);
        k.pos.y = wrap_coordinate(rng.uniform(0.0, side), side);
        k.heading = reduce_angle(rng.uniform(-std::numbers::pi, std::numbers::pi));
    }
    return world;
}

void step_positions(std::span<Kinematics> world, const SimConfig& config, Rng& rng) {
    const double side = config.area_side;
    const double v = config.speed;
    for (auto& k : world) {
        // Position moves along the heading held at the start of the step.
        const double theta = k.heading;
        k.pos.x = wrap_coordinate(k.pos.x + v * std::cos(theta), side);
        k.pos.y = wrap_coordinate(k.pos.y + v * std::sin(theta), side);
        k.heading = reduce_angle(theta + rng.uniform(-kMaxTurn, kMaxTurn));
    }
}

double wrap_coordinate(double value, double side) {
    if (value >= 0.0 && value < side) return value;
    double w = std::fmod(value, side);
    if (w < 0.0) w += side;
    // A tiny negative value plus `side` can round up to exactly `side`.
    if (w >= side) w = 0.0;
    return w;
}

double reduce_angle(double theta) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (theta > std::numbers::pi || theta <= -std::numbers::pi) {
        theta = std::remainder(theta, two_pi);
        if (theta <= -std::numbers::pi) theta += two_pi;
    }
    return theta;
}

}  // namespace mobnet
