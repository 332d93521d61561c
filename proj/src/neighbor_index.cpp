#include "mobnet/neighbor_index.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mobnet {

GridIndex GridIndex::build(std::span<const Point> positions, const SimConfig& config, Step snapshot_step) {
    GridIndex index;
    index.n_nodes_ = positions.size();
    index.area_side_ = config.area_side;
    index.radius_ = config.comm_radius;
    index.snapshot_step_ = snapshot_step;

    const double cells = std::floor(config.area_side / config.comm_radius);
    index.cells_per_side_ = cells >= 1.0 ? static_cast<std::size_t>(cells) : 0;
    if (index.brute_force()) return index;

    index.cell_side_ = config.area_side / static_cast<double>(index.cells_per_side_);
    const std::size_t n_cells = index.cells_per_side_ * index.cells_per_side_;

    std::vector<std::size_t> cell_of_node(positions.size());
    index.cell_start_.assign(n_cells + 1, 0);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        cell_of_node[i] = index.cell_of(positions[i]);
        ++index.cell_start_[cell_of_node[i] + 1];
    }
    for (std::size_t c = 0; c < n_cells; ++c) index.cell_start_[c + 1] += index.cell_start_[c];

    index.ids_.resize(positions.size());
    std::vector<std::size_t> fill(index.cell_start_.begin(), index.cell_start_.end() - 1);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        index.ids_[fill[cell_of_node[i]]++] = static_cast<NodeId>(i);
    }
    return index;
}

std::size_t GridIndex::cell_of(Point p) const {
    const auto clamp = [this](double v) {
        auto c = static_cast<std::size_t>(v / cell_side_);
        return c < cells_per_side_ ? c : cells_per_side_ - 1;
    };
    return clamp(p.y) * cells_per_side_ + clamp(p.x);
}

std::span<const NodeId> GridIndex::bucket(std::size_t cx, std::size_t cy) const {
    if (brute_force()) return {};
    const std::size_t c = cy * cells_per_side_ + cx;
    return std::span<const NodeId>(ids_).subspan(cell_start_[c], cell_start_[c + 1] - cell_start_[c]);
}

void GridIndex::neighbors_of(NodeId node, std::span<const Point> positions, std::vector<NodeId>& out) const {
    if (node >= n_nodes_ || positions.size() != n_nodes_) {
        throw std::out_of_range("neighbors_of: unknown node id " + std::to_string(node));
    }
    out.clear();
    const Point p = positions[node];

    if (brute_force()) {
        for (NodeId j = 0; j < n_nodes_; ++j) {
            if (j != node && toroidal_distance(p, positions[j], area_side_) <= radius_) out.push_back(j);
        }
        return;
    }

    const std::size_t n = cells_per_side_;
    const std::size_t home = cell_of(p);
    const std::size_t hx = home % n;
    const std::size_t hy = home / n;
    for (std::size_t oy = 0; oy < 3; ++oy) {
        const std::size_t cy = (hy + n + oy - 1) % n;
        for (std::size_t ox = 0; ox < 3; ++ox) {
            const std::size_t cx = (hx + n + ox - 1) % n;
            for (NodeId j : bucket(cx, cy)) {
                if (j != node && toroidal_distance(p, positions[j], area_side_) <= radius_) out.push_back(j);
            }
        }
    }
}

}  // namespace mobnet
