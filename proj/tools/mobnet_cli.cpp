// mobnet: run, replicate and sweep energy-limited mobile network simulations.
//
//   mobnet [flags] run
//   mobnet [flags] sweep <rho|r|v|alpha|L|N> <v1,v2,...>
//   mobnet [flags] critical-rates <lo> <hi>
//
// Exit codes: 0 ok, 2 configuration/usage error, 3 insufficient data, 4 I/O error.

#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "mobnet/config.hpp"
#include "mobnet/harness.hpp"
#include "mobnet/output.hpp"

namespace fs = std::filesystem;
using namespace mobnet;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitIo = 4;

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
            throw UsageError("malformed value '" + item + "' in list '" + text + "'");
        }
        values.push_back(v);
        pos = comma + 1;
    }
    return values;
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError(dir, "cannot create output directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-time simulator of energy-limited mobile networks"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value file mirroring the long flags; flags take precedence");

    SimConfig config;
    ClassifierThresholds thresholds;
    std::optional<std::size_t> runs;
    unsigned jobs = 1;
    std::string out_dir = ".";

    app.add_option("--nodes", config.n_nodes, "Number of nodes N")->capture_default_str();
    app.add_option("--area", config.area_side, "Side L of the square torus")->capture_default_str();
    app.add_option("--radius", config.comm_radius, "Communication radius r")->capture_default_str();
    app.add_option("--speed", config.speed, "Node speed v per step")->capture_default_str();
    app.add_option("--alpha", config.alpha, "Routing trade-off alpha in [0,1]")->capture_default_str();
    app.add_option("--rate", config.gen_rate, "Packets generated per node per step (rho)")->capture_default_str();
    app.add_option("--capacity", config.capacity, "Packets a node can send per step (C)")->capture_default_str();
    app.add_option("--energy", config.init_energy, "Initial energy per node (E0)")->capture_default_str();
    app.add_option("--hop-cost", config.hop_cost, "Energy per one-hop transfer (dE)")->capture_default_str();
    app.add_option("--seed", config.seed, "Root seed; replica i uses seed + i")->capture_default_str();
    app.add_option("--max-steps", config.max_steps, "Stop runs that have not died by this step")->capture_default_str();
    app.add_option("--transient-cutoff", config.transient_cutoff, "Transient steps skipped by delta S")
        ->capture_default_str();
    app.add_option("--runs", runs, "Replicas per point (run: 1, sweep: 100, critical-rates: 11)");
    app.add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();

    app.add_option("--eps-abs", thresholds.eps_abs, "Classifier: absolute delta S slack")->capture_default_str();
    app.add_option("--eps-rel", thresholds.eps_rel, "Classifier: delta S slack relative to N*rho")
        ->capture_default_str();
    app.add_option("--theta-none", thresholds.theta_none, "Classifier: congested fraction for free flow")
        ->capture_default_str();
    app.add_option("--theta-full", thresholds.theta_full, "Classifier: congested fraction for saturation")
        ->capture_default_str();
    app.add_option("--early-window", thresholds.early_window, "Classifier: steps allowed to saturate")
        ->capture_default_str();

    auto* run_cmd = app.add_subcommand("run", "Run one configuration (optionally replicated)");

    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter over a list of values");
    std::string sweep_param;
    std::string sweep_values;
    sweep_cmd->add_option("param", sweep_param, "rho, r, v, alpha, L or N")->required();
    sweep_cmd->add_option("values", sweep_values, "Comma-separated values")->required();

    auto* crit_cmd = app.add_subcommand("critical-rates", "Bisect for the three critical generation rates");
    double rho_lo = 0.0;
    double rho_hi = 0.0;
    double tolerance = 0.05;
    crit_cmd->add_option("lo", rho_lo, "Rate that must classify as no congestion")->required();
    crit_cmd->add_option("hi", rho_hi, "Rate that must classify as absolute congestion")->required();
    crit_cmd->add_option("--tolerance", tolerance, "Final bracket width")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        validate(config);
        const fs::path dir(out_dir);

        if (*run_cmd) {
            const std::size_t n = runs.value_or(1);
            if (n == 0) throw UsageError("--runs must be at least 1");
            std::vector<RunSummary> summaries(n);
            std::vector<std::uint64_t> seeds(n);
            RunSeries first;
            parallel_for(n, jobs, [&](std::size_t i) {
                SimConfig c = config;
                c.seed = config.seed + i;
                seeds[i] = c.seed;
                auto [series, summary] = run_simulation(c, thresholds);
                summaries[i] = std::move(summary);
                if (i == 0) first = std::move(series);
            });
            const ReplicaRow row = aggregate_runs(std::move(summaries), std::move(seeds));
            ensure_directory(dir);
            output::write_file(dir / "series.csv", output::series_csv(first));
            output::write_file(dir / "summary.json", output::dump(output::run_document(config, thresholds, row)));
            std::cout << "state=" << to_string(row.majority_state) << " died=" << row.died << "/" << row.runs;
            if (row.lifetime_T.mean) std::cout << " T=" << *row.lifetime_T.mean;
            if (row.tau0.mean) std::cout << " tau0=" << *row.tau0.mean;
            std::cout << " dS=" << row.delta_S.mean.value_or(0.0) << "\n";
        } else if (*sweep_cmd) {
            const SweepParam param = parse_sweep_param(sweep_param);
            const std::vector<double> values = parse_list(sweep_values);
            const std::size_t n = runs.value_or(100);
            if (n == 0) throw UsageError("--runs must be at least 1");
            const SweepTable table = sweep(config, param, values, n, config.seed, jobs, thresholds);
            ensure_directory(dir);
            output::write_file(dir / "sweep.csv", output::sweep_csv(table));
            output::write_file(dir / "sweep.json", output::dump(output::sweep_document(config, thresholds, table)));
            std::cout << output::sweep_csv(table);
        } else if (*crit_cmd) {
            const std::size_t n = runs.value_or(11);
            const CriticalRates rates =
                find_critical_rates(config, rho_lo, rho_hi, n, tolerance, config.seed, jobs, thresholds);
            ensure_directory(dir);
            output::write_file(dir / "critical_rates.json",
                               output::dump(output::critical_rates_document(config, thresholds, rates, rho_lo, rho_hi)));
            std::cout << "rho_s=" << rates.rho_s << " rho_f=" << rates.rho_f << " rho_a=" << rates.rho_a << "\n";
        }
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const BracketError& e) {
        std::cerr << "bracket error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InsufficientDataError& e) {
        std::cerr << "insufficient data: " << e.what() << "\n";
        return kExitData;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    }
    return 0;
}
