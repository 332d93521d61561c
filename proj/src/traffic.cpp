#include "mobnet/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mobnet {

void HopLog::add(std::uint32_t hops, std::uint64_t count) {
    if (hops >= counts_.size()) counts_.resize(hops + 1, 0);
    counts_[hops] += count;
    total_ += count;
    hop_sum_ += static_cast<std::uint64_t>(hops) * count;
}

std::uint64_t generate_packets(std::span<NodeState> nodes, const SimConfig& config, Rng& rng, Step now,
                               std::uint64_t& next_id) {
    const double whole = std::floor(config.gen_rate);
    const double frac = config.gen_rate - whole;
    const auto base = static_cast<std::uint64_t>(whole);
    const auto n = static_cast<std::uint64_t>(nodes.size());
    if (n < 2) return 0;

    std::uint64_t generated = 0;
    for (std::uint64_t src = 0; src < n; ++src) {
        std::uint64_t k = base;
        if (frac > 0.0 && rng.bernoulli(frac)) ++k;
        for (std::uint64_t p = 0; p < k; ++p) {
            std::uint64_t dst = rng.below(n - 1);
            if (dst >= src) ++dst;
            nodes[src].queue.push_back(Packet{next_id++, static_cast<NodeId>(src), static_cast<NodeId>(dst), 0, now});
        }
        generated += k;
    }
    return generated;
}

std::vector<double> routing_weights(std::span<const double> energies, std::span<const double> distances_to_dst,
                                    double alpha) {
    if (energies.empty()) throw std::invalid_argument("routing_weights: empty neighbor set");
    if (energies.size() != distances_to_dst.size()) {
        throw std::invalid_argument("routing_weights: energies and distances differ in length");
    }
    for (std::size_t i = 0; i < energies.size(); ++i) {
        if (!(energies[i] > 0.0) || !(distances_to_dst[i] > 0.0)) {
            throw std::invalid_argument("routing_weights: energies and distances must be positive");
        }
    }
    const double energy_sum = std::accumulate(energies.begin(), energies.end(), 0.0);
    const double distance_sum = std::accumulate(distances_to_dst.begin(), distances_to_dst.end(), 0.0);

    std::vector<double> w(energies.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = std::pow(energies[i] / energy_sum, 1.0 - alpha) / std::pow(distances_to_dst[i] / distance_sum, alpha);
    }
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= total;
    return w;
}

namespace {

// Unnormalized next-hop weight E^(1-alpha) * l^(-alpha), split into an energy
// factor (fixed while one sender is being processed) and a distance factor
// (per packet). The common exponents get closed forms.
class WeightKernel {
public:
    explicit WeightKernel(double alpha) : alpha_(alpha) {
        if (alpha == 0.0) mode_ = Mode::EnergyOnly;
        else if (alpha == 0.5) mode_ = Mode::Half;
        else if (alpha == 1.0) mode_ = Mode::DistanceOnly;
        else mode_ = Mode::General;
    }

    double energy_factor(double e) const {
        switch (mode_) {
            case Mode::EnergyOnly: return e;
            case Mode::Half: return std::sqrt(e);
            case Mode::DistanceOnly: return 1.0;
            case Mode::General: break;
        }
        return std::pow(e, 1.0 - alpha_);
    }

    /// Writes the weight of every neighbor for a packet headed to `target`
    /// and returns their sum.
    double fill(std::span<const double> nx, std::span<const double> ny, std::span<const double> energy,
                Point target, double side, double min_distance, std::span<double> out) const {
        switch (mode_) {
            case Mode::EnergyOnly:
                return fill_with(nx, ny, energy, target, side, min_distance, out, [](double) { return 1.0; });
            case Mode::Half:
                return fill_with(nx, ny, energy, target, side, min_distance, out,
                                 [](double l) { return 1.0 / std::sqrt(l); });
            case Mode::DistanceOnly:
                return fill_with(nx, ny, energy, target, side, min_distance, out, [](double l) { return 1.0 / l; });
            case Mode::General: break;
        }
        const double a = alpha_;
        return fill_with(nx, ny, energy, target, side, min_distance, out,
                         [a](double l) { return std::pow(l, -a); });
    }

private:
    enum class Mode { EnergyOnly, Half, DistanceOnly, General };

    template <class DistanceFactor>
    static double fill_with(std::span<const double> nx, std::span<const double> ny, std::span<const double> energy,
                            Point target, double side, double min_distance, std::span<double> out,
                            DistanceFactor factor) {
        for (std::size_t j = 0; j < out.size(); ++j) {
            const double l = std::max(toroidal_distance(Point{nx[j], ny[j]}, target, side), min_distance);
            out[j] = energy[j] * factor(l);
        }
        double total = 0.0;
        for (double w : out) total += w;
        return total;
    }

    double alpha_;
    Mode mode_;
};

}  // namespace

DeliveryStats deliver_step(std::span<NodeState> nodes, std::span<const Point> positions, const GridIndex& index,
                           const SimConfig& config, Rng& rng, Step /*now*/, HopLog& hops) {
    DeliveryStats stats;
    const std::size_t n = nodes.size();
    if (n == 0) return stats;

    const double side = config.area_side;
    const double radius = config.comm_radius;
    const double hop_cost = config.hop_cost;
    const double min_distance = kDistanceClampFraction * side;
    const WeightKernel kernel(config.alpha);

    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), NodeId{0});
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(order[i], order[rng.below(i + 1)]);
    }

    // Per-sender copies of neighbor positions and energy factors, so the
    // per-packet weight loop runs over contiguous arrays.
    std::vector<NodeId> neighbors;
    std::vector<double> nx, ny, energy_factor, weight;

    for (NodeId s : order) {
        NodeState& sender = nodes[s];
        if (sender.queue.empty()) continue;
        const double affordable = std::floor(sender.energy / hop_cost);
        std::size_t budget = std::min<std::size_t>(config.capacity, sender.queue.size());
        if (affordable < static_cast<double>(budget)) budget = affordable > 0.0 ? static_cast<std::size_t>(affordable) : 0;

        const Point here = positions[s];
        bool neighbors_ready = false;

        for (std::size_t sent = 0; sent < budget; ++sent) {
            Packet packet = sender.queue.front();
            const Point target = positions[packet.dst];

            if (toroidal_distance(here, target, side) <= radius) {
                sender.queue.pop_front();
                ++packet.hops;
                hops.add(packet.hops);
                ++stats.arrived;
            } else {
                if (!neighbors_ready) {
                    index.neighbors_of(s, positions, neighbors);
                    const std::size_t m = neighbors.size();
                    nx.resize(m);
                    ny.resize(m);
                    energy_factor.resize(m);
                    weight.resize(m);
                    for (std::size_t j = 0; j < m; ++j) {
                        nx[j] = positions[neighbors[j]].x;
                        ny[j] = positions[neighbors[j]].y;
                        energy_factor[j] = kernel.energy_factor(nodes[neighbors[j]].energy);
                    }
                    neighbors_ready = true;
                }
                const std::size_t m = neighbors.size();
                if (m == 0) break;

                const double total = kernel.fill(nx, ny, energy_factor, target, side, min_distance, weight);
                // Every neighbor is drained (alpha < 1); hold the packet.
                if (!(total > 0.0)) break;

                // Zero-weight neighbors can never be picked: the scan only
                // stops once the running sum strictly exceeds u.
                const double u = rng.uniform() * total;
                std::size_t pick = m - 1;
                double running = 0.0;
                for (std::size_t j = 0; j < m; ++j) {
                    running += weight[j];
                    if (running > u) {
                        pick = j;
                        break;
                    }
                }
                while (weight[pick] == 0.0) --pick;  // rounding fallback landed on a drained tail

                sender.queue.pop_front();
                ++packet.hops;
                nodes[neighbors[pick]].queue.push_back(packet);
            }
            sender.energy -= hop_cost;
            ++stats.forwarded;
            stats.energy_spent += hop_cost;
        }
    }
    return stats;
}

bool is_dead(std::span<const NodeState> nodes, const SimConfig& config) {
    return std::any_of(nodes.begin(), nodes.end(), [&](const NodeState& s) { return s.energy < config.hop_cost; });
}

}  // namespace mobnet
