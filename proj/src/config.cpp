#include "mobnet/config.hpp"

#include <cmath>

namespace mobnet {

namespace {

void require(bool ok, const char* field, const char* what) {
    if (!ok) throw ConfigError(field, what);
}

}  // namespace

void validate(const SimConfig& c) {
    // NaN fails every comparison below, so it is rejected too.
    require(c.n_nodes >= 2, "n_nodes", "must be at least 2");
    require(c.area_side > 0 && std::isfinite(c.area_side), "area_side", "must be positive and finite");
    require(c.comm_radius > 0 && std::isfinite(c.comm_radius), "comm_radius", "must be positive and finite");
    require(c.speed >= 0 && std::isfinite(c.speed), "speed", "must be non-negative and finite");
    require(c.alpha >= 0 && c.alpha <= 1, "alpha", "must lie in [0, 1]");
    require(c.gen_rate >= 0 && std::isfinite(c.gen_rate), "gen_rate", "must be non-negative and finite");
    require(c.capacity >= 1, "capacity", "must be at least 1");
    require(c.init_energy > 0 && std::isfinite(c.init_energy), "init_energy", "must be positive and finite");
    require(c.hop_cost > 0 && std::isfinite(c.hop_cost), "hop_cost", "must be positive and finite");
}

}  // namespace mobnet
