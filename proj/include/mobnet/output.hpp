#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "mobnet/harness.hpp"
#include "mobnet/metrics.hpp"

namespace mobnet {

/// File could not be written; carries the offending path.
class IoError : public std::runtime_error {
public:
    IoError(std::filesystem::path path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what), path_(std::move(path)) {}

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

namespace output {

using nlohmann::json;

inline constexpr const char* kSeriesHeader = "t,S,n_c,E_total,E_max,E_min,generated,forwarded,arrived";
inline constexpr const char* kSweepHeader =
    "value,runs,died,lifetime_T_mean,lifetime_T_se,delta_S_mean,delta_S_se,tau0_mean,tau0_se,k_mean,k_se,"
    "R_at_death_mean,R_at_death_se,majority_state";

/// Shortest round-trip decimal form.
std::string format_number(double value);

std::string series_csv(const RunSeries& series);
std::string sweep_csv(const SweepTable& table);

json to_json(const SimConfig& config);
json to_json(const ClassifierThresholds& thresholds);
json to_json(const RunSummary& summary);
json to_json(const Stat& stat);
json to_json(const ReplicaRow& row);
json to_json(const SweepTable& table);
json to_json(const CriticalRates& rates);

/// Model constants that are not flags (turn noise, distance clamp, ...).
json constants_json();

/// Strict readers: throw std::invalid_argument on a missing or unknown field.
SimConfig config_from_json(const json& j);
RunSummary summary_from_json(const json& j);

/// Top-level documents. Each echoes the configuration, classifier thresholds
/// and model constants.
json run_document(const SimConfig& config, const ClassifierThresholds& thresholds, const ReplicaRow& row);
json sweep_document(const SimConfig& base, const ClassifierThresholds& thresholds, const SweepTable& table);
json critical_rates_document(const SimConfig& config, const ClassifierThresholds& thresholds,
                             const CriticalRates& rates, double rho_lo, double rho_hi);

std::string dump(const json& document);

/// Writes through a temporary file in the same directory and renames it into
/// place; nothing is left behind on failure.
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace output
}  // namespace mobnet
