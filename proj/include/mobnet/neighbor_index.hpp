#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mobnet/config.hpp"
#include "mobnet/world.hpp"

namespace mobnet {

/// Uniform grid over the torus for fixed-radius neighbor queries.
///
/// The cell side is L / floor(L / r) >= r, so every node within r of a query
/// point lies in the 3x3 block of cells around it (with wrap). When fewer than
/// three cells fit along a side that block would alias onto itself, and the
/// index answers queries by scanning every node instead.
///
/// Buckets are stored as one flat id array sorted by cell (counting sort), with
/// ids ascending inside each cell. The index does not own the positions; every
/// query must pass the same snapshot the index was built from.
class GridIndex {
public:
    GridIndex() = default;

    static GridIndex build(std::span<const Point> positions, const SimConfig& config, Step snapshot_step = 0);

    /// Appends { j != node : toroidal_distance(p_node, p_j) <= r } to `out`
    /// (after clearing it). Throws std::out_of_range for an unknown id.
    void neighbors_of(NodeId node, std::span<const Point> positions, std::vector<NodeId>& out) const;

    std::vector<NodeId> neighbors_of(NodeId node, std::span<const Point> positions) const {
        std::vector<NodeId> out;
        neighbors_of(node, positions, out);
        return out;
    }

    std::size_t size() const noexcept { return n_nodes_; }
    bool brute_force() const noexcept { return cells_per_side_ < 3; }
    std::size_t cells_per_side() const noexcept { return cells_per_side_; }
    double cell_side() const noexcept { return cell_side_; }
    Step snapshot_step() const noexcept { return snapshot_step_; }

    /// Ids stored in cell (cx, cy); empty in brute-force mode.
    std::span<const NodeId> bucket(std::size_t cx, std::size_t cy) const;

private:
    std::size_t cell_of(Point p) const;

    std::size_t n_nodes_ = 0;
    std::size_t cells_per_side_ = 0;
    double cell_side_ = 0.0;
    double area_side_ = 0.0;
    double radius_ = 0.0;
    Step snapshot_step_ = 0;
    std::vector<std::size_t> cell_start_;  // size cells^2 + 1
    std::vector<NodeId> ids_;
};

}  // namespace mobnet
