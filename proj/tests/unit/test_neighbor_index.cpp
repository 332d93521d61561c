#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "mobnet/neighbor_index.hpp"
#include "oracles.hpp"

using namespace mobnet;

namespace {

SimConfig grid_config(double side, double radius) {
    SimConfig c;
    c.area_side = side;
    c.comm_radius = radius;
    return c;
}

std::vector<Point> random_points(Rng& rng, std::size_t n, double side) {
    std::vector<Point> p(n);
    for (auto& q : p) q = {rng.uniform(0, side), rng.uniform(0, side)};
    return p;
}

std::vector<NodeId> sorted(std::vector<NodeId> v) {
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

TEST_CASE("empty index") {
    const auto index = GridIndex::build({}, grid_config(20, 3));
    CHECK(index.size() == 0);
    CHECK_THROWS_AS(index.neighbors_of(0, {}), std::out_of_range);
}

TEST_CASE("buckets partition the nodes") {
    Rng rng(1);
    const auto points = random_points(rng, 1000, 20.0);
    const auto index = GridIndex::build(points, grid_config(20, 3));
    REQUIRE_FALSE(index.brute_force());
    CHECK(index.cells_per_side() == 6);
    CHECK(index.cell_side() >= 3.0);

    std::vector<int> seen(points.size(), 0);
    std::size_t total = 0;
    for (std::size_t cy = 0; cy < index.cells_per_side(); ++cy) {
        for (std::size_t cx = 0; cx < index.cells_per_side(); ++cx) {
            for (NodeId id : index.bucket(cx, cy)) {
                ++seen[id];
                ++total;
            }
        }
    }
    CHECK(total == 1000);
    CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
}

TEST_CASE("rebuild is idempotent") {
    Rng rng(2);
    const auto points = random_points(rng, 300, 15.0);
    const auto a = GridIndex::build(points, grid_config(15, 2));
    const auto b = GridIndex::build(points, grid_config(15, 2));
    for (NodeId i = 0; i < points.size(); ++i) CHECK(a.neighbors_of(i, points) == b.neighbors_of(i, points));
}

TEST_CASE("boundary distance r counts as a link") {
    const std::vector<Point> points{{1.0, 1.0}, {4.0, 1.0}, {10.0, 10.0}};
    const auto index = GridIndex::build(points, grid_config(20, 3));
    CHECK(index.neighbors_of(0, points) == std::vector<NodeId>{1});
    CHECK(index.neighbors_of(1, points) == std::vector<NodeId>{0});
    CHECK(index.neighbors_of(2, points).empty());
}

TEST_CASE("links wrap across the torus edge") {
    const std::vector<Point> points{{0.2, 10.0}, {19.5, 10.0}, {10.0, 19.9}, {10.0, 0.1}};
    const auto index = GridIndex::build(points, grid_config(20, 3));
    CHECK(index.neighbors_of(0, points) == std::vector<NodeId>{1});
    CHECK(index.neighbors_of(2, points) == std::vector<NodeId>{3});
}

TEST_CASE("unknown node id is a lookup error") {
    const std::vector<Point> points{{1.0, 1.0}, {2.0, 1.0}};
    const auto index = GridIndex::build(points, grid_config(20, 3));
    CHECK_THROWS_AS(index.neighbors_of(2, points), std::out_of_range);
}

TEST_CASE("grid queries equal the brute-force scan on 200 random instances") {
    Rng rng(2024);
    for (int instance = 0; instance < 200; ++instance) {
        const double side = rng.uniform(2.0, 30.0);
        // Radii from tiny to larger than L/3, so the brute-force fallback is
        // exercised too.
        const double radius = side * rng.uniform(0.01, 0.6);
        const std::size_t n = 1 + rng.below(400);
        const auto points = random_points(rng, n, side);
        const auto index = GridIndex::build(points, grid_config(side, radius));
        for (NodeId i = 0; i < n; ++i) {
            const auto got = sorted(index.neighbors_of(i, points));
            REQUIRE(got == testing::brute_force_neighbors(i, points, side, radius));
        }
    }
}

TEST_CASE("neighbor relation is symmetric and excludes self") {
    Rng rng(5);
    const auto points = random_points(rng, 500, 20.0);
    const auto index = GridIndex::build(points, grid_config(20, 3));
    std::vector<std::set<NodeId>> sets(points.size());
    for (NodeId i = 0; i < points.size(); ++i) {
        const auto nb = index.neighbors_of(i, points);
        sets[i] = std::set<NodeId>(nb.begin(), nb.end());
        CHECK(sets[i].count(i) == 0);
    }
    for (NodeId i = 0; i < points.size(); ++i) {
        for (NodeId j : sets[i]) CHECK(sets[j].count(i) == 1);
    }
}

TEST_CASE("small torus falls back to brute force") {
    Rng rng(8);
    const auto points = random_points(rng, 50, 5.0);
    const auto index = GridIndex::build(points, grid_config(5.0, 2.0));
    CHECK(index.brute_force());
    for (NodeId i = 0; i < points.size(); ++i) {
        CHECK(sorted(index.neighbors_of(i, points)) == testing::brute_force_neighbors(i, points, 5.0, 2.0));
    }
}
