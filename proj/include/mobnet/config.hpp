#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace mobnet {

using NodeId = std::uint32_t;
using Step = std::uint64_t;

/// Raised when a SimConfig violates one of its invariants. `field()` names
/// the offending parameter so the CLI can point the user at the flag.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Not enough simulated data to compute a statistic (too few steps, no
/// arrived packets, ...).
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Model parameters plus run controls. Defaults are the reference
/// scenario: 1000 nodes on a 20x20 torus, radius 3, speed 0.5.
struct SimConfig {
    std::uint32_t n_nodes = 1000;
    double area_side = 20.0;
    double comm_radius = 3.0;
    double speed = 0.5;
    double alpha = 0.5;
    double gen_rate = 0.1;
    std::uint32_t capacity = 5;
    double init_energy = 1000.0;
    double hop_cost = 1.0;

    std::uint64_t seed = 1;
    Step max_steps = 50000;
    Step transient_cutoff = 100;

    bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigError on the first violated invariant.
void validate(const SimConfig& config);

}  // namespace mobnet
