#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mobnet/config.hpp"
#include "mobnet/metrics.hpp"
#include "mobnet/neighbor_index.hpp"
#include "mobnet/rng.hpp"
#include "mobnet/traffic.hpp"
#include "mobnet/world.hpp"

namespace mobnet {

/// One simulated network: node kinematics, energies, queues, and the three
/// random streams, advanced one step at a time.
class Network {
public:
    explicit Network(const SimConfig& config);

    /// Advances one step: move, rebuild the index, generate, deliver,
    /// record. Calling it after death throws std::logic_error.
    StepRecord step();

    /// Observables of the current state (forwarded/arrived/generated are the
    /// counts of the most recent step).
    StepRecord snapshot() const;

    bool dead() const { return is_dead(nodes_, config_); }
    Step now() const noexcept { return now_; }

    const SimConfig& config() const noexcept { return config_; }
    std::span<const NodeState> nodes() const noexcept { return nodes_; }
    std::span<const Kinematics> world() const noexcept { return world_; }
    std::span<const Point> positions() const noexcept { return positions_; }
    const GridIndex& index() const noexcept { return index_; }
    const HopLog& hops() const noexcept { return hops_; }

    std::uint64_t total_generated() const noexcept { return total_generated_; }
    std::uint64_t total_arrived() const noexcept { return total_arrived_; }
    std::uint64_t total_forwarded() const noexcept { return total_forwarded_; }
    std::uint64_t queued() const;

private:
    void refresh_positions();

    SimConfig config_;
    Rng motion_rng_;
    Rng traffic_rng_;
    std::vector<Kinematics> world_;
    std::vector<Point> positions_;
    std::vector<NodeState> nodes_;
    GridIndex index_;
    HopLog hops_;
    Step now_ = 0;
    std::uint64_t next_packet_id_ = 0;
    std::uint32_t last_congested_ = 0;
    DeliveryStats last_;
    std::uint64_t total_generated_ = 0;
    std::uint64_t total_arrived_ = 0;
    std::uint64_t total_forwarded_ = 0;
};

}  // namespace mobnet
