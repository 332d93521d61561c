#include "mobnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mobnet {

std::string_view to_string(TrafficState state) {
    switch (state) {
        case TrafficState::NoCongestion: return "NoCongestion";
        case TrafficState::SlowCongestion: return "SlowCongestion";
        case TrafficState::FastCongestion: return "FastCongestion";
        case TrafficState::AbsoluteCongestion: return "AbsoluteCongestion";
    }
    return "Unknown";
}

std::optional<TrafficState> parse_traffic_state(std::string_view name) {
    for (int i = 0; i < 4; ++i) {
        const auto state = static_cast<TrafficState>(i);
        if (to_string(state) == name) return state;
    }
    return std::nullopt;
}

std::uint32_t congested_count(std::span<const NodeState> nodes, const SimConfig& config) {
    return static_cast<std::uint32_t>(std::count_if(
        nodes.begin(), nodes.end(), [&](const NodeState& s) { return s.queue.size() > config.capacity; }));
}

Step transient_start(Step run_length, Step transient_cutoff, double transient_fraction) {
    const auto fraction = static_cast<Step>(std::floor(transient_fraction * static_cast<double>(run_length)));
    return std::min(transient_cutoff, fraction);
}

namespace {

double growth_rate(const std::vector<StepRecord>& steps, Step from, Step to) {
    return (static_cast<double>(steps[to].S) - static_cast<double>(steps[from].S)) / static_cast<double>(to - from);
}

}  // namespace

double delta_s(const RunSeries& series, Step transient_cutoff) {
    const auto& steps = series.steps;
    if (steps.size() < 2) throw InsufficientDataError("delta_s: need at least two recorded steps");
    const Step end = steps.size() - 1;
    const Step start = transient_start(end, transient_cutoff);
    return growth_rate(steps, start, end);
}

double characteristic_time(const HopLog& hops) {
    if (hops.empty()) throw InsufficientDataError("characteristic_time: no packet has arrived");
    return static_cast<double>(hops.hop_sum()) / static_cast<double>(hops.total());
}

TrafficState classify_state(const RunSeries& series, const ClassifierThresholds& th) {
    const auto& steps = series.steps;
    const SimConfig& config = series.config;
    if (steps.size() < std::max<Step>(th.early_window, 1) + 1) {
        throw InsufficientDataError("classify_state: run shorter than the early window (" +
                                    std::to_string(th.early_window) + " steps)");
    }
    const Step end = steps.size() - 1;
    const auto tail = static_cast<Step>(std::floor(th.tail_fraction * static_cast<double>(end)));
    const Step last = end - tail;
    const Step start = std::min(transient_start(end, config.transient_cutoff, th.transient_fraction), last - 1);

    const double n = config.n_nodes;
    const double rate = growth_rate(steps, start, last);

    std::vector<std::uint32_t> window;
    for (Step t = std::max<Step>(start, 1); t <= last; ++t) window.push_back(steps[t].n_c);
    std::nth_element(window.begin(), window.begin() + window.size() / 2, window.end());
    const double median = window[window.size() / 2];

    if (rate <= th.eps_abs + th.eps_rel * n * config.gen_rate && median <= th.theta_none * n) {
        return TrafficState::NoCongestion;
    }
    const double full = th.theta_full * n;
    for (Step t = 1; t <= std::min(th.early_window, last); ++t) {
        if (steps[t].n_c >= full) return TrafficState::AbsoluteCongestion;
    }
    for (Step t = th.early_window + 1; t <= last; ++t) {
        if (steps[t].n_c >= full) return TrafficState::FastCongestion;
    }
    return TrafficState::SlowCongestion;
}

}  // namespace mobnet
