#include "mobnet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "mobnet/lifetime.hpp"
#include "mobnet/network.hpp"

namespace mobnet {

std::pair<RunSeries, RunSummary> run_simulation(const SimConfig& config, const ClassifierThresholds& thresholds) {
    validate(config);
    Network net(config);

    RunSeries series;
    series.config = config;
    series.steps.push_back(net.snapshot());
    while (!net.dead() && net.now() < config.max_steps) {
        series.steps.push_back(net.step());
    }
    series.hops = net.hops();

    RunSummary s;
    s.config = config;
    s.steps = net.now();
    s.died = net.dead();
    s.generated = net.total_generated();
    s.arrived = net.total_arrived();
    s.forwarded = net.total_forwarded();
    s.E_total_end = series.steps.back().E_total;
    s.delta_S = delta_s(series, config.transient_cutoff);
    s.state = classify_state(series, thresholds);
    if (!series.hops.empty()) s.tau0 = characteristic_time(series.hops);
    if (s.died) {
        s.lifetime_T = s.steps;
        s.R_at_death = energy_range(series.steps.back());
        if (s.tau0 && config.gen_rate > 0.0 && s.steps > 0) {
            s.k = lifetime::extract_k(static_cast<double>(s.steps), config.init_energy, config.gen_rate, *s.tau0,
                                      config.capacity, config.hop_cost);
        }
    }
    return {std::move(series), std::move(s)};
}

Stat summarize(const std::vector<double>& values) {
    Stat stat;
    stat.count = values.size();
    if (values.empty()) return stat;
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    stat.mean = mean;
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        const double variance = ss / static_cast<double>(values.size() - 1);
        stat.std_error = std::sqrt(variance / static_cast<double>(values.size()));
    }
    return stat;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& task) {
    if (n == 0) return;
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, n);
    std::vector<std::exception_ptr> errors(n);
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        task(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

ReplicaRow aggregate_runs(std::vector<RunSummary> runs, std::vector<std::uint64_t> seeds) {
    ReplicaRow row;
    row.runs = runs.size();
    row.seeds = std::move(seeds);

    std::vector<double> T, dS, tau, k, R, gen, arr, fwd;
    for (const auto& s : runs) {
        if (s.lifetime_T) T.push_back(static_cast<double>(*s.lifetime_T));
        dS.push_back(s.delta_S);
        if (s.tau0) tau.push_back(*s.tau0);
        if (s.k) k.push_back(*s.k);
        if (s.R_at_death) R.push_back(*s.R_at_death);
        gen.push_back(static_cast<double>(s.generated));
        arr.push_back(static_cast<double>(s.arrived));
        fwd.push_back(static_cast<double>(s.forwarded));
        if (s.died) ++row.died;
        ++row.state_counts[static_cast<int>(s.state)];
    }
    row.lifetime_T = summarize(T);
    row.delta_S = summarize(dS);
    row.tau0 = summarize(tau);
    row.k = summarize(k);
    row.R_at_death = summarize(R);
    row.generated = summarize(gen);
    row.arrived = summarize(arr);
    row.forwarded = summarize(fwd);

    // Ties go to the milder state.
    std::size_t best = 0;
    for (std::size_t i = 1; i < row.state_counts.size(); ++i) {
        if (row.state_counts[i] > row.state_counts[best]) best = i;
    }
    row.majority_state = static_cast<TrafficState>(best);
    row.summaries = std::move(runs);
    return row;
}

ReplicaRow run_replicas(const SimConfig& config, std::size_t n_runs, std::uint64_t seed_base, unsigned jobs,
                        const ClassifierThresholds& thresholds) {
    if (n_runs == 0) throw UsageError("run_replicas: need at least one run");
    validate(config);
    std::vector<RunSummary> runs(n_runs);
    std::vector<std::uint64_t> seeds(n_runs);
    for (std::size_t i = 0; i < n_runs; ++i) seeds[i] = seed_base + i;

    parallel_for(n_runs, jobs, [&](std::size_t i) {
        SimConfig c = config;
        c.seed = seeds[i];
        runs[i] = run_simulation(c, thresholds).second;
    });
    return aggregate_runs(std::move(runs), std::move(seeds));
}

SweepParam parse_sweep_param(std::string_view name) {
    if (name == "rho") return SweepParam::Rho;
    if (name == "r") return SweepParam::Radius;
    if (name == "v") return SweepParam::Speed;
    if (name == "alpha") return SweepParam::Alpha;
    if (name == "L") return SweepParam::Area;
    if (name == "N") return SweepParam::Nodes;
    throw UsageError("unknown sweep parameter '" + std::string(name) + "' (expected rho, r, v, alpha, L or N)");
}

std::string_view to_string(SweepParam param) {
    switch (param) {
        case SweepParam::Rho: return "rho";
        case SweepParam::Radius: return "r";
        case SweepParam::Speed: return "v";
        case SweepParam::Alpha: return "alpha";
        case SweepParam::Area: return "L";
        case SweepParam::Nodes: return "N";
    }
    return "?";
}

SimConfig with_param(const SimConfig& base, SweepParam param, double value) {
    SimConfig c = base;
    switch (param) {
        case SweepParam::Rho: c.gen_rate = value; break;
        case SweepParam::Radius: c.comm_radius = value; break;
        case SweepParam::Speed: c.speed = value; break;
        case SweepParam::Alpha: c.alpha = value; break;
        case SweepParam::Area: c.area_side = value; break;
        case SweepParam::Nodes:
            if (!(value >= 2.0) || value != std::floor(value) || value > 4.0e9) {
                throw ConfigError("n_nodes", "sweep value must be an integer >= 2");
            }
            c.n_nodes = static_cast<std::uint32_t>(value);
            break;
    }
    validate(c);
    return c;
}

SweepTable sweep(const SimConfig& base, SweepParam parameter, const std::vector<double>& values, std::size_t n_runs,
                 std::uint64_t seed_base, unsigned jobs, const ClassifierThresholds& thresholds) {
    SweepTable table;
    table.parameter = parameter;
    table.values = values;
    table.runs = n_runs;
    table.seed_base = seed_base;

    std::vector<SimConfig> configs;
    configs.reserve(values.size());
    for (double v : values) configs.push_back(with_param(base, parameter, v));

    // Flatten (value, replica) so that every cell shares one thread pool.
    const std::size_t cells = values.size() * n_runs;
    std::vector<RunSummary> runs(cells);
    parallel_for(cells, jobs, [&](std::size_t i) {
        SimConfig c = configs[i / n_runs];
        c.seed = seed_base + i % n_runs;
        runs[i] = run_simulation(c, thresholds).second;
    });

    for (std::size_t v = 0; v < values.size(); ++v) {
        std::vector<RunSummary> block(std::make_move_iterator(runs.begin() + v * n_runs),
                                      std::make_move_iterator(runs.begin() + (v + 1) * n_runs));
        std::vector<std::uint64_t> seeds(n_runs);
        for (std::size_t i = 0; i < n_runs; ++i) seeds[i] = seed_base + i;
        ReplicaRow row = aggregate_runs(std::move(block), std::move(seeds));
        row.value = values[v];
        table.rows.push_back(std::move(row));
    }
    return table;
}

CriticalRates find_critical_rates(const SimConfig& config, double rho_lo, double rho_hi, std::size_t replicas,
                                  double tolerance, std::uint64_t seed_base, unsigned jobs,
                                  const ClassifierThresholds& thresholds) {
    if (replicas == 0) throw UsageError("find_critical_rates: need at least one replica");
    if (!(tolerance > 0.0)) throw UsageError("find_critical_rates: tolerance must be positive");
    if (!(rho_lo >= 0.0) || !(rho_hi > rho_lo)) throw UsageError("find_critical_rates: need 0 <= lo < hi");

    CriticalRates out;
    out.tolerance = tolerance;
    out.replicas = replicas;
    out.seed_base = seed_base;

    std::map<double, std::array<std::size_t, 4>> cache;
    const auto votes = [&](double rho) -> const std::array<std::size_t, 4>& {
        auto it = cache.find(rho);
        if (it == cache.end()) {
            SimConfig c = config;
            c.gen_rate = rho;
            it = cache.emplace(rho, run_replicas(c, replicas, seed_base, jobs, thresholds).state_counts).first;
        }
        return it->second;
    };
    // Majority of replicas classified at `level` or worse.
    const auto reached = [&](double rho, TrafficState level) {
        const auto& v = votes(rho);
        std::size_t n = 0;
        for (int i = static_cast<int>(level); i < 4; ++i) n += v[i];
        return 2 * n > replicas;
    };

    if (reached(rho_lo, TrafficState::SlowCongestion)) {
        throw BracketError("lower rate " + std::to_string(rho_lo) +
                           " is already congested; widen the range downwards");
    }
    if (!reached(rho_hi, TrafficState::AbsoluteCongestion)) {
        throw BracketError("upper rate " + std::to_string(rho_hi) +
                           " does not reach absolute congestion; widen the range upwards");
    }

    const auto bisect = [&](TrafficState level, double lo, double hi) {
        while (hi - lo > tolerance) {
            const double mid = 0.5 * (lo + hi);
            if (reached(mid, level)) hi = mid;
            else lo = mid;
        }
        return std::pair{lo, hi};
    };

    // The states are nested (absolute implies fast implies slow), so the
    // lower end found for one level is a valid lower end for the next.
    const auto [s_lo, s_hi] = bisect(TrafficState::SlowCongestion, rho_lo, rho_hi);
    const auto [f_lo, f_hi] = bisect(TrafficState::FastCongestion, s_lo, rho_hi);
    const auto [a_lo, a_hi] = bisect(TrafficState::AbsoluteCongestion, f_lo, rho_hi);

    out.rho_s = 0.5 * (s_lo + s_hi);
    // Noise can put a later midpoint below an earlier one; keep the order.
    out.rho_f = std::max(out.rho_s, 0.5 * (f_lo + f_hi));
    out.rho_a = std::max(out.rho_f, 0.5 * (a_lo + a_hi));

    for (const auto& [rho, v] : cache) out.probes.emplace_back(rho, v);
    return out;
}

}  // namespace mobnet
