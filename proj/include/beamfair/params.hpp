#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "beamfair/errors.hpp"
#include "beamfair/geometry.hpp"
#include "beamfair/rng.hpp"
#include "beamfair/units.hpp"

namespace beamfair {

struct SimParams {
    int n_ues = 20;
    int n_aps = 3;
    double carrier_ghz = 28.0;
    double bandwidth_hz = 1e9;
    double noise_density_dbm_hz = -145.0;
    double sidelobe_gain = 0.1;
    double ue_beamwidth_deg = 90.0;
    std::array<double, 2> ue_direction_range_deg = {250.0, 290.0};
    std::vector<double> ap_beamwidth_set_deg = {30.0, 45.0, 60.0};
    std::vector<double> ap_direction_set_deg = {70.0, 80.0, 90.0, 100.0, 110.0};
    std::array<double, 2> area_m = {30.0, 20.0};
    double ue_min_separation_m = 4.0;
    double shadow_sigma_db = 4.2;
    double intersite_shadow_corr = 0.5;
    double power_budget_dbm = 30.0;
    double pl_exponent_coeff = 18.5;
    double pl_intercept_db = 32.4;

    double noise_w() const { return dbm_to_watts(noise_density_dbm_hz) * bandwidth_hz; }
    double power_budget_w() const { return dbm_to_watts(power_budget_dbm); }

    void validate() const;
};

inline void check_candidate_set(const std::vector<double>& set, const std::string& name,
                                bool is_width) {
    if (set.empty()) throw ValidationError(name + " must be nonempty");
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (is_width && !(set[i] > 0.0 && set[i] < 360.0)) {
            throw ValidationError(name + " entries must lie in (0, 360) degrees");
        }
        if (i > 0 && !(set[i] > set[i - 1])) {
            throw ValidationError(name + " must be strictly sorted without duplicates");
        }
    }
}

inline void SimParams::validate() const {
    if (n_ues < 1) throw ValidationError("n_ues must be >= 1");
    if (n_aps < 1) throw ValidationError("n_aps must be >= 1");
    if (!(carrier_ghz > 0.0)) throw ValidationError("carrier_ghz must be positive");
    if (!(bandwidth_hz > 0.0)) throw ValidationError("bandwidth_hz must be positive");
    if (!(sidelobe_gain > 0.0 && sidelobe_gain < 1.0)) {
        throw ValidationError("sidelobe_gain must be in (0, 1)");
    }
    if (!(ue_beamwidth_deg > 0.0 && ue_beamwidth_deg < 360.0)) {
        throw ValidationError("ue_beamwidth_deg must be in (0, 360)");
    }
    if (!(ue_direction_range_deg[0] <= ue_direction_range_deg[1]) ||
        ue_direction_range_deg[1] - ue_direction_range_deg[0] > 360.0) {
        throw ValidationError("ue_direction_range_deg must satisfy min <= max with span <= 360");
    }
    check_candidate_set(ap_beamwidth_set_deg, "ap_beamwidth_set_deg", true);
    check_candidate_set(ap_direction_set_deg, "ap_direction_set_deg", false);
    if (!(area_m[0] > 0.0 && area_m[1] > 0.0)) throw ValidationError("area_m must be positive");
    if (!(ue_min_separation_m >= 0.0)) throw ValidationError("ue_min_separation_m must be >= 0");
    if (!(shadow_sigma_db >= 0.0)) throw ValidationError("shadow_sigma_db must be >= 0");
    if (!(intersite_shadow_corr >= 0.0 && intersite_shadow_corr <= 1.0)) {
        throw ValidationError("intersite_shadow_corr must be in [0, 1]");
    }
    if (!(pl_exponent_coeff > 0.0)) throw ValidationError("pl_exponent_coeff must be positive");
}

// Scenario configuration document: SimParams plus the AP layout.
struct Config {
    SimParams params;
    std::vector<Point> ap_positions;

    void validate() const {
        params.validate();
        if (static_cast<int>(ap_positions.size()) != params.n_aps) {
            throw ValidationError("ap_positions count must equal n_aps");
        }
    }
};

// APs evenly spaced along the y = 0 long edge of the area, facing the
// hotspot above them.
inline std::vector<Point> default_ap_positions(const SimParams& params) {
    std::vector<Point> aps(params.n_aps);
    for (int m = 0; m < params.n_aps; ++m) {
        aps[m] = {(m + 0.5) * params.area_m[0] / params.n_aps, 0.0};
    }
    return aps;
}

inline Config default_config() {
    Config cfg;
    cfg.ap_positions = default_ap_positions(cfg.params);
    return cfg;
}

inline void to_json(nlohmann::json& j, const Point& p) { j = nlohmann::json::array({p.x, p.y}); }

inline void from_json(const nlohmann::json& j, Point& p) {
    if (!j.is_array() || j.size() != 2) throw ValidationError("point must be a [x, y] pair");
    p.x = j[0].get<double>();
    p.y = j[1].get<double>();
}

inline void to_json(nlohmann::json& j, const SimParams& p) {
    j = nlohmann::json{{"n_ues", p.n_ues},
                       {"n_aps", p.n_aps},
                       {"carrier_ghz", p.carrier_ghz},
                       {"bandwidth_hz", p.bandwidth_hz},
                       {"noise_density_dbm_hz", p.noise_density_dbm_hz},
                       {"sidelobe_gain", p.sidelobe_gain},
                       {"ue_beamwidth_deg", p.ue_beamwidth_deg},
                       {"ue_direction_range_deg", p.ue_direction_range_deg},
                       {"ap_beamwidth_set_deg", p.ap_beamwidth_set_deg},
                       {"ap_direction_set_deg", p.ap_direction_set_deg},
                       {"area_m", p.area_m},
                       {"ue_min_separation_m", p.ue_min_separation_m},
                       {"shadow_sigma_db", p.shadow_sigma_db},
                       {"intersite_shadow_corr", p.intersite_shadow_corr},
                       {"power_budget_dbm", p.power_budget_dbm},
                       {"pl_exponent_coeff", p.pl_exponent_coeff},
                       {"pl_intercept_db", p.pl_intercept_db}};
}

inline void from_json(const nlohmann::json& j, SimParams& p) {
    p = SimParams{};
    j.at("n_ues").get_to(p.n_ues);
    j.at("n_aps").get_to(p.n_aps);
    j.at("carrier_ghz").get_to(p.carrier_ghz);
    j.at("bandwidth_hz").get_to(p.bandwidth_hz);
    j.at("noise_density_dbm_hz").get_to(p.noise_density_dbm_hz);
    j.at("sidelobe_gain").get_to(p.sidelobe_gain);
    j.at("ue_beamwidth_deg").get_to(p.ue_beamwidth_deg);
    j.at("ue_direction_range_deg").get_to(p.ue_direction_range_deg);
    j.at("ap_beamwidth_set_deg").get_to(p.ap_beamwidth_set_deg);
    j.at("ap_direction_set_deg").get_to(p.ap_direction_set_deg);
    j.at("area_m").get_to(p.area_m);
    j.at("ue_min_separation_m").get_to(p.ue_min_separation_m);
    j.at("shadow_sigma_db").get_to(p.shadow_sigma_db);
    j.at("intersite_shadow_corr").get_to(p.intersite_shadow_corr);
    j.at("power_budget_dbm").get_to(p.power_budget_dbm);
    j.at("pl_exponent_coeff").get_to(p.pl_exponent_coeff);
    j.at("pl_intercept_db").get_to(p.pl_intercept_db);
}

inline nlohmann::json config_to_json(const Config& cfg) {
    nlohmann::json j = cfg.params;
    j["ap_positions"] = cfg.ap_positions;
    j["rng_algorithm"] = kRngAlgorithm;
    return j;
}

inline Config config_from_json(const nlohmann::json& j) {
    Config cfg;
    try {
        cfg.params = j.get<SimParams>();
        if (j.contains("ap_positions")) {
            cfg.ap_positions = j.at("ap_positions").get<std::vector<Point>>();
        } else {
            cfg.ap_positions = default_ap_positions(cfg.params);
        }
        if (j.contains("rng_algorithm") &&
            j.at("rng_algorithm").get<std::string>() != kRngAlgorithm) {
            throw ValidationError("unsupported rng_algorithm: " +
                                  j.at("rng_algorithm").get<std::string>() + " (expected " +
                                  std::string(kRngAlgorithm) + ")");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline Config load_config(const std::string& path) { return config_from_json(load_json_file(path)); }

}  // namespace beamfair
