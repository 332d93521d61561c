#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mobnet/config.hpp"
#include "mobnet/metrics.hpp"

namespace mobnet {

/// Bad command-line usage (unknown sweep parameter, malformed list, ...).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// find_critical_rates could not confirm its bracket.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunSummary {
    SimConfig config;
    bool died = false;
    Step steps = 0;                         // steps executed
    std::optional<Step> lifetime_T;         // present iff died
    double delta_S = 0.0;
    std::optional<double> tau0;             // absent when nothing arrived
    std::optional<double> k;                // needs lifetime_T and tau0
    std::optional<double> R_at_death;       // present iff died
    TrafficState state = TrafficState::NoCongestion;
    std::uint64_t generated = 0;
    std::uint64_t arrived = 0;
    std::uint64_t forwarded = 0;
    double E_total_end = 0.0;
};

/// Steps one network until death or max_steps and summarizes it.
/// Deterministic in config (seed included).
std::pair<RunSeries, RunSummary> run_simulation(const SimConfig& config, const ClassifierThresholds& thresholds = {});

/// Mean and standard error over the replicas where a field was present.
struct Stat {
    std::size_t count = 0;
    std::optional<double> mean;
    std::optional<double> std_error;  // needs count >= 2
};

Stat summarize(const std::vector<double>& values);

struct ReplicaRow {
    double value = 0.0;  // swept parameter value (0 outside sweeps)
    std::size_t runs = 0;
    std::vector<std::uint64_t> seeds;
    Stat lifetime_T;
    Stat delta_S;
    Stat tau0;
    Stat k;
    Stat R_at_death;
    Stat generated;
    Stat arrived;
    Stat forwarded;
    std::size_t died = 0;
    std::array<std::size_t, 4> state_counts{};
    TrafficState majority_state = TrafficState::NoCongestion;
    std::vector<RunSummary> summaries;  // in seed order
};

/// Aggregates finished runs (given in seed order) into one row.
ReplicaRow aggregate_runs(std::vector<RunSummary> runs, std::vector<std::uint64_t> seeds);

/// Runs `n_runs` replicas with seeds seed_base, seed_base + 1, ... on up to
/// `jobs` threads. Results are aggregated in seed order, so the row does not
/// depend on scheduling.
ReplicaRow run_replicas(const SimConfig& config, std::size_t n_runs, std::uint64_t seed_base, unsigned jobs = 1,
                        const ClassifierThresholds& thresholds = {});

enum class SweepParam { Rho, Radius, Speed, Alpha, Area, Nodes };

/// Accepts rho, r, v, alpha, L, N. Throws UsageError otherwise.
SweepParam parse_sweep_param(std::string_view name);
std::string_view to_string(SweepParam param);

/// Copy of `base` with one parameter replaced; validated.
SimConfig with_param(const SimConfig& base, SweepParam param, double value);

struct SweepTable {
    SweepParam parameter = SweepParam::Rho;
    std::vector<double> values;
    std::size_t runs = 0;
    std::uint64_t seed_base = 0;
    std::vector<ReplicaRow> rows;
};

SweepTable sweep(const SimConfig& base, SweepParam parameter, const std::vector<double>& values, std::size_t n_runs,
                 std::uint64_t seed_base, unsigned jobs = 1, const ClassifierThresholds& thresholds = {});

struct CriticalRates {
    double rho_s = 0.0;
    double rho_f = 0.0;
    double rho_a = 0.0;
    double tolerance = 0.0;
    std::size_t replicas = 0;
    std::uint64_t seed_base = 0;
    /// Every generation rate probed, with the per-state vote counts.
    std::vector<std::pair<double, std::array<std::size_t, 4>>> probes;
};

/// Bisects for the three rates where the majority classification first
/// reaches slow, fast and absolute congestion. Requires that rho_lo
/// classifies as NoCongestion and rho_hi as AbsoluteCongestion; throws
/// BracketError otherwise. `replicas` should be odd.
CriticalRates find_critical_rates(const SimConfig& config, double rho_lo, double rho_hi, std::size_t replicas,
                                  double tolerance, std::uint64_t seed_base, unsigned jobs = 1,
                                  const ClassifierThresholds& thresholds = {});

/// Calls task(i) for i in [0, n) on up to `jobs` threads. The first
/// exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& task);

}  // namespace mobnet
