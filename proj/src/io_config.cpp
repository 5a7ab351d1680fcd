#include <fstream>
#include <set>

#include <json.hpp>

#include "hardyq/io.hpp"

namespace hardyq {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!allowed.contains(key))
            throw ValidationError("config: unknown field '" + key + "' in " + where);
    }
}

double num_field(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ValidationError("config: '" + key + "' must be a number");
    return j[key].get<double>();
}

LevelSystem parse_custom_system(const json& j) {
    reject_unknown(j, {"levels", "rates", "fluorescent", "initial_level",
                       "detection_efficiency", "background_rate"},
                   "system");
    LevelSystem sys;
    if (!j.contains("levels") || !j["levels"].is_array())
        throw ValidationError("config: system.levels must be an array of names");
    for (const auto& name : j["levels"]) sys.levels.push_back(name.get<std::string>());
    const int n = sys.level_count();
    sys.rates.assign(n * n, 0.0);
    if (!j.contains("rates") || !j["rates"].is_array())
        throw ValidationError("config: system.rates must be an array");
    for (const auto& r : j["rates"]) {
        reject_unknown(r, {"from", "to", "rate"}, "system.rates[]");
        sys.set_rate(r.at("from").get<std::string>(), r.at("to").get<std::string>(),
                     r.at("rate").get<double>());
    }
    if (j.contains("fluorescent")) {
        for (const auto& f : j["fluorescent"]) {
            reject_unknown(f, {"from", "to"}, "system.fluorescent[]");
            sys.fluorescent.emplace_back(sys.index_of(f.at("from").get<std::string>()),
                                         sys.index_of(f.at("to").get<std::string>()));
        }
    }
    sys.detection_efficiency = num_field(j, "detection_efficiency", 1.0);
    sys.background_rate = num_field(j, "background_rate", 0.0);
    if (j.contains("initial_level"))
        sys.initial_level = sys.index_of(j["initial_level"].get<std::string>());
    sys.validate();
    return sys;
}

}  // namespace

SimConfig parse_sim_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: invalid JSON: ") + e.what(), -1);
    }
    if (!j.is_object()) throw ValidationError("config: top level must be an object");
    reject_unknown(j,
                   {"schema_version", "gamma", "bright_rate", "shelving_rate",
                    "detection_efficiency", "background_rate", "bin_width", "duration",
                    "seed", "low_threshold", "high_threshold", "min_bins",
                    "target_dark_periods", "max_duration", "system"},
                   "top level");
    if (!j.contains("schema_version"))
        throw ValidationError("config: missing schema_version");
    if (j["schema_version"].get<std::string>() != "1")
        throw ValidationError("config: unsupported schema_version (expected \"1\")");

    SimConfig cfg;
    cfg.preset.gamma = num_field(j, "gamma", cfg.preset.gamma);
    cfg.preset.bright_rate = num_field(j, "bright_rate", cfg.preset.bright_rate);
    cfg.preset.shelving_rate = num_field(j, "shelving_rate", cfg.preset.shelving_rate);
    cfg.preset.detection_efficiency =
        num_field(j, "detection_efficiency", cfg.preset.detection_efficiency);
    cfg.preset.background_rate = num_field(j, "background_rate", cfg.preset.background_rate);
    cfg.bin_width = num_field(j, "bin_width", cfg.bin_width);
    cfg.duration = num_field(j, "duration", cfg.duration);
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    cfg.low_threshold = num_field(j, "low_threshold", cfg.low_threshold);
    cfg.high_threshold = num_field(j, "high_threshold", cfg.high_threshold);
    if (j.contains("min_bins")) cfg.min_bins = j["min_bins"].get<int>();
    if (j.contains("target_dark_periods"))
        cfg.target_dark_periods = j["target_dark_periods"].get<int>();
    cfg.max_duration = num_field(j, "max_duration", cfg.max_duration);
    if (j.contains("system")) {
        cfg.custom_system = parse_custom_system(j["system"]);
        cfg.has_custom_system = true;
    }
    if (!(cfg.bin_width > 0.0)) throw ValidationError("config: bin_width must be positive");
    if (!(cfg.duration > 0.0)) throw ValidationError("config: duration must be positive");
    return cfg;
}

SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_sim_config(text);
}

}  // namespace hardyq
