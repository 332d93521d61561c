#include "mobnet/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace mobnet {

namespace {

std::vector<Kinematics> seeded_world(const SimConfig& config) {
    Rng init = Rng::derive(config.seed, Stream::Init);
    return init_world(config, init);
}

}  // namespace

Network::Network(const SimConfig& config)
    : config_(config),
      motion_rng_(Rng::derive(config.seed, Stream::Motion)),
      traffic_rng_(Rng::derive(config.seed, Stream::Traffic)),
      world_(seeded_world(config)),
      nodes_(config.n_nodes) {
    for (auto& node : nodes_) node.energy = config_.init_energy;
    refresh_positions();
    index_ = GridIndex::build(positions_, config_, 0);
}

void Network::refresh_positions() {
    positions_.resize(world_.size());
    std::transform(world_.begin(), world_.end(), positions_.begin(), [](const Kinematics& k) { return k.pos; });
}

StepRecord Network::step() {
    if (dead()) throw std::logic_error("Network::step called after the network died");
    ++now_;

    step_positions(world_, config_, motion_rng_);
    refresh_positions();
    index_ = GridIndex::build(positions_, config_, now_);

    const std::uint64_t generated = generate_packets(nodes_, config_, traffic_rng_, now_, next_packet_id_);
    last_congested_ = congested_count(nodes_, config_);
    last_ = deliver_step(nodes_, positions_, index_, config_, traffic_rng_, now_, hops_);
    last_.generated = generated;

    total_generated_ += generated;
    total_arrived_ += last_.arrived;
    total_forwarded_ += last_.forwarded;
    return snapshot();
}

std::uint64_t Network::queued() const {
    std::uint64_t s = 0;
    for (const auto& node : nodes_) s += node.queue.size();
    return s;
}

StepRecord Network::snapshot() const {
    StepRecord r;
    r.t = now_;
    r.S = queued();
    r.n_c = last_congested_;
    r.E_min = nodes_.empty() ? 0.0 : nodes_.front().energy;
    r.E_max = r.E_min;
    for (const auto& node : nodes_) {
        r.E_total += node.energy;
        r.E_min = std::min(r.E_min, node.energy);
        r.E_max = std::max(r.E_max, node.energy);
    }
    r.forwarded = last_.forwarded;
    r.arrived = last_.arrived;
    r.generated = last_.generated;
    return r;
}

}  // namespace mobnet
