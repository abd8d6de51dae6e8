#pragma once

#include <algorithm>
#include <vector>

#include <json.hpp>

#include "beamfair/errors.hpp"
#include "beamfair/params.hpp"

namespace beamfair {

// One receive beam setting per AP, drawn from the discrete candidate sets.
struct BeamConfig {
    std::vector<double> widths_deg;
    std::vector<double> directions_deg;

    friend bool operator==(const BeamConfig&, const BeamConfig&) = default;
};

inline void validate_beam_config(const SimParams& params, const BeamConfig& config) {
    if (static_cast<int>(config.widths_deg.size()) != params.n_aps ||
        static_cast<int>(config.directions_deg.size()) != params.n_aps) {
        throw ValidationError("beam config must provide one width and one direction per AP");
    }
    auto member = [](const std::vector<double>& set, double v) {
        return std::find(set.begin(), set.end(), v) != set.end();
    };
    for (double w : config.widths_deg) {
        if (!member(params.ap_beamwidth_set_deg, w)) {
            throw ValidationError("beam width " + std::to_string(w) +
                                  " is not in ap_beamwidth_set_deg");
        }
    }
    for (double d : config.directions_deg) {
        if (!member(params.ap_direction_set_deg, d)) {
            throw ValidationError("beam direction " + std::to_string(d) +
                                  " is not in ap_direction_set_deg");
        }
    }
}

inline void to_json(nlohmann::json& j, const BeamConfig& c) {
    j = nlohmann::json{{"widths_deg", c.widths_deg}, {"directions_deg", c.directions_deg}};
}

inline void from_json(const nlohmann::json& j, BeamConfig& c) {
    j.at("widths_deg").get_to(c.widths_deg);
    j.at("directions_deg").get_to(c.directions_deg);
}

}  // namespace beamfair
