#include "mobnet/output.hpp"

#include <charconv>
#include <fstream>
#include <set>

#include "mobnet/traffic.hpp"
#include "mobnet/world.hpp"

namespace mobnet::output {

std::string format_number(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

template <class T>
json optional_integer(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

std::string csv_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

// Strict field access: every key of `j` must be in `allowed`.
void check_fields(const json& j, const std::set<std::string>& allowed, const char* what) {
    if (!j.is_object()) throw std::invalid_argument(std::string(what) + ": expected an object");
    for (const auto& [key, _] : j.items()) {
        if (!allowed.count(key)) throw std::invalid_argument(std::string(what) + ": unknown field '" + key + "'");
    }
    for (const auto& key : allowed) {
        if (!j.contains(key)) throw std::invalid_argument(std::string(what) + ": missing field '" + key + "'");
    }
}

std::optional<double> read_optional_double(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

}  // namespace

std::string series_csv(const RunSeries& series) {
    std::string out = kSeriesHeader;
    out += '\n';
    for (const auto& r : series.steps) {
        out += std::to_string(r.t);
        out += ',' + std::to_string(r.S);
        out += ',' + std::to_string(r.n_c);
        out += ',' + format_number(r.E_total);
        out += ',' + format_number(r.E_max);
        out += ',' + format_number(r.E_min);
        out += ',' + std::to_string(r.generated);
        out += ',' + std::to_string(r.forwarded);
        out += ',' + std::to_string(r.arrived);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const SweepTable& table) {
    std::string out = kSweepHeader;
    out += '\n';
    for (const auto& row : table.rows) {
        out += format_number(row.value);
        out += ',' + std::to_string(row.runs);
        out += ',' + std::to_string(row.died);
        for (const Stat* s : {&row.lifetime_T, &row.delta_S, &row.tau0, &row.k, &row.R_at_death}) {
            out += ',' + csv_optional(s->mean);
            out += ',' + csv_optional(s->std_error);
        }
        out += ',';
        out += to_string(row.majority_state);
        out += '\n';
    }
    return out;
}

json to_json(const SimConfig& c) {
    return json{{"n_nodes", c.n_nodes},         {"area_side", c.area_side},
                {"comm_radius", c.comm_radius}, {"speed", c.speed},
                {"alpha", c.alpha},             {"gen_rate", c.gen_rate},
                {"capacity", c.capacity},       {"init_energy", c.init_energy},
                {"hop_cost", c.hop_cost},       {"seed", c.seed},
                {"max_steps", c.max_steps},     {"transient_cutoff", c.transient_cutoff}};
}

SimConfig config_from_json(const json& j) {
    check_fields(j,
                 {"n_nodes", "area_side", "comm_radius", "speed", "alpha", "gen_rate", "capacity", "init_energy",
                  "hop_cost", "seed", "max_steps", "transient_cutoff"},
                 "config");
    SimConfig c;
    c.n_nodes = j.at("n_nodes").get<std::uint32_t>();
    c.area_side = j.at("area_side").get<double>();
    c.comm_radius = j.at("comm_radius").get<double>();
    c.speed = j.at("speed").get<double>();
    c.alpha = j.at("alpha").get<double>();
    c.gen_rate = j.at("gen_rate").get<double>();
    c.capacity = j.at("capacity").get<std::uint32_t>();
    c.init_energy = j.at("init_energy").get<double>();
    c.hop_cost = j.at("hop_cost").get<double>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.max_steps = j.at("max_steps").get<Step>();
    c.transient_cutoff = j.at("transient_cutoff").get<Step>();
    return c;
}

json to_json(const ClassifierThresholds& t) {
    return json{{"eps_abs", t.eps_abs},
                {"eps_rel", t.eps_rel},
                {"theta_none", t.theta_none},
                {"theta_full", t.theta_full},
                {"early_window", t.early_window},
                {"tail_fraction", t.tail_fraction},
                {"transient_fraction", t.transient_fraction}};
}

json constants_json() {
    return json{{"max_turn", kMaxTurn},
                {"distance_clamp_fraction", kDistanceClampFraction},
                {"link_rule", "distance <= r (minimum image)"},
                {"congested_rule", "queue > C at start of delivery"},
                {"death_rule", "min energy < hop_cost"},
                {"std_error", "sample sd / sqrt(count)"}};
}

json to_json(const RunSummary& s) {
    return json{{"config", to_json(s.config)},
                {"seed", s.config.seed},
                {"died", s.died},
                {"steps", s.steps},
                {"lifetime_T", optional_integer(s.lifetime_T)},
                {"delta_S", s.delta_S},
                {"tau0", optional_number(s.tau0)},
                {"k", optional_number(s.k)},
                {"R_at_death", optional_number(s.R_at_death)},
                {"state", std::string(to_string(s.state))},
                {"generated", s.generated},
                {"arrived", s.arrived},
                {"forwarded", s.forwarded},
                {"E_total_end", s.E_total_end}};
}

RunSummary summary_from_json(const json& j) {
    check_fields(j,
                 {"config", "seed", "died", "steps", "lifetime_T", "delta_S", "tau0", "k", "R_at_death", "state",
                  "generated", "arrived", "forwarded", "E_total_end"},
                 "summary");
    RunSummary s;
    s.config = config_from_json(j.at("config"));
    if (j.at("seed").get<std::uint64_t>() != s.config.seed) {
        throw std::invalid_argument("summary: seed disagrees with config.seed");
    }
    s.died = j.at("died").get<bool>();
    s.steps = j.at("steps").get<Step>();
    if (!j.at("lifetime_T").is_null()) s.lifetime_T = j.at("lifetime_T").get<Step>();
    s.delta_S = j.at("delta_S").get<double>();
    s.tau0 = read_optional_double(j.at("tau0"));
    s.k = read_optional_double(j.at("k"));
    s.R_at_death = read_optional_double(j.at("R_at_death"));
    const auto state = parse_traffic_state(j.at("state").get<std::string>());
    if (!state) throw std::invalid_argument("summary: unknown traffic state");
    s.state = *state;
    s.generated = j.at("generated").get<std::uint64_t>();
    s.arrived = j.at("arrived").get<std::uint64_t>();
    s.forwarded = j.at("forwarded").get<std::uint64_t>();
    s.E_total_end = j.at("E_total_end").get<double>();
    return s;
}

json to_json(const Stat& s) {
    return json{{"count", s.count}, {"mean", optional_number(s.mean)}, {"std_error", optional_number(s.std_error)}};
}

namespace {

json state_counts_json(const std::array<std::size_t, 4>& counts) {
    json j = json::object();
    for (int i = 0; i < 4; ++i) j[std::string(to_string(static_cast<TrafficState>(i)))] = counts[i];
    return j;
}

}  // namespace

json to_json(const ReplicaRow& row) {
    json runs = json::array();
    for (const auto& s : row.summaries) runs.push_back(to_json(s));
    return json{{"value", row.value},
                {"runs", row.runs},
                {"seeds", row.seeds},
                {"died", row.died},
                {"lifetime_T", to_json(row.lifetime_T)},
                {"delta_S", to_json(row.delta_S)},
                {"tau0", to_json(row.tau0)},
                {"k", to_json(row.k)},
                {"R_at_death", to_json(row.R_at_death)},
                {"generated", to_json(row.generated)},
                {"arrived", to_json(row.arrived)},
                {"forwarded", to_json(row.forwarded)},
                {"state_counts", state_counts_json(row.state_counts)},
                {"majority_state", std::string(to_string(row.majority_state))},
                {"summaries", runs}};
}

json to_json(const SweepTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows) rows.push_back(to_json(row));
    return json{{"parameter", std::string(to_string(table.parameter))},
                {"values", table.values},
                {"runs", table.runs},
                {"seed_base", table.seed_base},
                {"rows", rows}};
}

json to_json(const CriticalRates& rates) {
    json probes = json::array();
    for (const auto& [rho, counts] : rates.probes) {
        probes.push_back(json{{"rho", rho}, {"state_counts", state_counts_json(counts)}});
    }
    return json{{"rho_s", rates.rho_s},         {"rho_f", rates.rho_f},       {"rho_a", rates.rho_a},
                {"tolerance", rates.tolerance}, {"replicas", rates.replicas}, {"seed_base", rates.seed_base},
                {"probes", probes}};
}

json run_document(const SimConfig& config, const ClassifierThresholds& thresholds, const ReplicaRow& row) {
    return json{{"kind", "run"},
                {"config", to_json(config)},
                {"thresholds", to_json(thresholds)},
                {"constants", constants_json()},
                {"result", to_json(row)}};
}

json sweep_document(const SimConfig& base, const ClassifierThresholds& thresholds, const SweepTable& table) {
    return json{{"kind", "sweep"},
                {"config", to_json(base)},
                {"thresholds", to_json(thresholds)},
                {"constants", constants_json()},
                {"result", to_json(table)}};
}

json critical_rates_document(const SimConfig& config, const ClassifierThresholds& thresholds,
                             const CriticalRates& rates, double rho_lo, double rho_hi) {
    return json{{"kind", "critical_rates"},
                {"config", to_json(config)},
                {"thresholds", to_json(thresholds)},
                {"constants", constants_json()},
                {"rho_lo", rho_lo},
                {"rho_hi", rho_hi},
                {"result", to_json(rates)}};
}

std::string dump(const json& document) { return document.dump(2) + "\n"; }

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(path, "cannot open for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError(path, "write failed");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        const std::string reason = ec.message();
        std::filesystem::remove(tmp, ec);
        throw IoError(path, "cannot move into place: " + reason);
    }
}

}  // namespace mobnet::output
