#pragma once

#include <cstdint>
#include <deque>
#include <span>
#include <vector>

#include "mobnet/config.hpp"
#include "mobnet/neighbor_index.hpp"
#include "mobnet/rng.hpp"
#include "mobnet/world.hpp"

namespace mobnet {

struct Packet {
    std::uint64_t id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    std::uint32_t hops = 0;
    Step born_at = 0;
};

/// Residual energy and FIFO buffer of one node. Kinematics live in a
/// separate array (see Network) so the mobility and index code can work on
/// contiguous positions.
struct NodeState {
    double energy = 0.0;
    std::deque<Packet> queue;
};

struct DeliveryStats {
    std::uint64_t forwarded = 0;  // one-hop transfers, final hops included
    std::uint64_t arrived = 0;
    std::uint64_t generated = 0;
    double energy_spent = 0.0;
};

/// Histogram of hop counts of delivered packets.
class HopLog {
public:
    void add(std::uint32_t hops, std::uint64_t count = 1);

    std::uint64_t total() const noexcept { return total_; }
    std::uint64_t hop_sum() const noexcept { return hop_sum_; }
    bool empty() const noexcept { return total_ == 0; }

    /// counts()[h] is the number of packets that arrived after h hops.
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
    std::uint64_t hop_sum_ = 0;
};

/// Appends floor(rho) + Bernoulli(frac(rho)) packets to every node's queue,
/// each addressed to a uniformly chosen other node. Packet ids are taken from
/// `next_id` in order. Returns the number generated.
std::uint64_t generate_packets(std::span<NodeState> nodes, const SimConfig& config, Rng& rng, Step now,
                               std::uint64_t& next_id);

/// Next-hop distribution over a sender's neighbors for one packet.
///
/// Weight of neighbor i is (E_i / sum E)^(1-alpha) / (l_i / sum l)^alpha where
/// l_i is that neighbor's distance to the destination; the weights are then
/// normalized to sum to one. Throws std::invalid_argument on an empty or
/// mismatched input.
std::vector<double> routing_weights(std::span<const double> energies, std::span<const double> distances_to_dst,
                                    double alpha);

/// Smallest distance-to-destination used in routing, as a fraction of L.
inline constexpr double kDistanceClampFraction = 1e-9;

/// One delivery phase.
///
/// Nodes are visited in a fresh random order. Each visited node sends up to
/// min(C, floor(E / dE)) packets from the head of its queue: straight to the
/// destination when it is within range, otherwise to a neighbor drawn from
/// routing_weights using the energies as they stand at that moment. Every
/// transfer costs the sender dE. A node without neighbors keeps its packets.
/// Hop counts of arrived packets go to `hops`.
DeliveryStats deliver_step(std::span<NodeState> nodes, std::span<const Point> positions, const GridIndex& index,
                           const SimConfig& config, Rng& rng, Step now, HopLog& hops);

/// True once some node can no longer pay for a single hop.
bool is_dead(std::span<const NodeState> nodes, const SimConfig& config);

}  // namespace mobnet
