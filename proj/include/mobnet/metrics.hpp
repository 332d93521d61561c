#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mobnet/config.hpp"
#include "mobnet/traffic.hpp"

namespace mobnet {

/// Observables after one step (t = 0 is the initial state).
struct StepRecord {
    Step t = 0;
    std::uint64_t S = 0;    // packets buffered anywhere in the network
    std::uint32_t n_c = 0;  // nodes holding more than C packets when delivery began
    double E_total = 0.0;
    double E_max = 0.0;
    double E_min = 0.0;
    std::uint64_t forwarded = 0;
    std::uint64_t arrived = 0;
    std::uint64_t generated = 0;

    bool operator==(const StepRecord&) const = default;
};

struct RunSeries {
    SimConfig config;
    std::vector<StepRecord> steps;
    HopLog hops;
};

enum class TrafficState : int {
    NoCongestion = 0,
    SlowCongestion = 1,
    FastCongestion = 2,
    AbsoluteCongestion = 3,
};

std::string_view to_string(TrafficState state);
std::optional<TrafficState> parse_traffic_state(std::string_view name);

/// Thresholds of the four-state classifier. All of them end up in the
/// summary JSON.
struct ClassifierThresholds {
    double eps_abs = 0.5;       // packets per step
    double eps_rel = 0.01;      // fraction of N * rho
    double theta_none = 0.01;   // fraction of N
    double theta_full = 0.95;   // fraction of N
    Step early_window = 50;     // steps
    double tail_fraction = 0.05;
    double transient_fraction = 0.05;
};

std::uint32_t congested_count(std::span<const NodeState> nodes, const SimConfig& config);

/// Start of the post-transient window: min(cutoff, 5% of the run).
Step transient_start(Step run_length, Step transient_cutoff, double transient_fraction = 0.05);

/// Average growth rate of S over the post-transient window,
/// (S(T_end) - S(t0)) / (T_end - t0).
double delta_s(const RunSeries& series, Step transient_cutoff);

inline double energy_range(const StepRecord& record) { return record.E_max - record.E_min; }

/// Mean hop count of delivered packets.
double characteristic_time(const HopLog& hops);

TrafficState classify_state(const RunSeries& series, const ClassifierThresholds& thresholds = {});

}  // namespace mobnet
