#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "beamfair/errors.hpp"
#include "beamfair/geometry.hpp"
#include "beamfair/matrix.hpp"
#include "beamfair/params.hpp"
#include "beamfair/rng.hpp"

namespace beamfair {

// Close-in path loss in dB at distance d >= 1 m:
//   intercept + coeff*log10(d) + 20*log10(f_c) + shadowing.
inline double path_loss_db(const SimParams& params, double distance_m, double shadow_db) {
    if (!(distance_m >= 1.0)) {
        throw ValidationError("path_loss_db: distance below the 1 m reference distance");
    }
    return params.pl_intercept_db + params.pl_exponent_coeff * std::log10(distance_m) +
           20.0 * std::log10(params.carrier_ghz) + shadow_db;
}

// One realization of geometry and large-scale fading. All beam-configuration
// dependent quantities live elsewhere; this is the part fixed per trial.
struct NetworkScenario {
    std::vector<Point> ue_positions;
    std::vector<Point> ap_positions;
    std::vector<double> ue_tx_directions_deg;
    double ue_tx_beamwidth_deg = 0.0;
    Matrix shadow_db;   // UEs x APs
    Matrix pl_linear;   // UEs x APs, power gain in (0, 1]
    std::uint64_t seed = 0;

    int n_ues() const { return static_cast<int>(ue_positions.size()); }
    int n_aps() const { return static_cast<int>(ap_positions.size()); }
};

namespace detail {

// Lower-triangular factor of the equicorrelated covariance
// sigma^2 * ((1-rho) I + rho 11^T).
inline Matrix shadow_cholesky(int m, double sigma, double rho) {
    Matrix cov(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            cov(i, j) = sigma * sigma * (i == j ? 1.0 : rho);
        }
    }
    Matrix chol(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = cov(i, j);
            for (int k = 0; k < j; ++k) s -= chol(i, k) * chol(j, k);
            if (i == j) {
                chol(i, i) = s > 0.0 ? std::sqrt(s) : 0.0;
            } else {
                chol(i, j) = chol(j, j) > 0.0 ? s / chol(j, j) : 0.0;
            }
        }
    }
    return chol;
}

}  // namespace detail

// Draws UE positions (uniform with a minimum mutual separation, and at least
// the 1 m path-loss reference distance from every AP), UE beam directions,
// and correlated per-link shadowing. Bit-exact function of (config, seed).
inline NetworkScenario generate_scenario(const Config& cfg, std::uint64_t seed) {
    cfg.validate();
    const SimParams& params = cfg.params;
    const int n = params.n_ues;
    const int m = params.n_aps;

    NetworkScenario sc;
    sc.ap_positions = cfg.ap_positions;
    sc.ue_tx_beamwidth_deg = params.ue_beamwidth_deg;
    sc.seed = seed;

    constexpr int kMaxAttemptsPerUe = 10000;
    RandomStream pos_rng = RandomStream::derive(seed, 0, "ue-positions");
    sc.ue_positions.reserve(n);
    for (int i = 0; i < n; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttemptsPerUe && !placed; ++attempt) {
            Point candidate{pos_rng.uniform(0.0, params.area_m[0]),
                            pos_rng.uniform(0.0, params.area_m[1])};
            bool ok = true;
            for (const Point& other : sc.ue_positions) {
                if (distance(candidate, other) < params.ue_min_separation_m) {
                    ok = false;
                    break;
                }
            }
            for (const Point& ap : sc.ap_positions) {
                if (ok && distance(candidate, ap) < 1.0) ok = false;
            }
            if (ok) {
                sc.ue_positions.push_back(candidate);
                placed = true;
            }
        }
        if (!placed) {
            throw ValidationError(
                "generate_scenario: could not place UE " + std::to_string(i) + " after " +
                std::to_string(kMaxAttemptsPerUe) +
                " attempts; separation constraint infeasible for this area");
        }
    }

    RandomStream dir_rng = RandomStream::derive(seed, 0, "ue-directions");
    sc.ue_tx_directions_deg.resize(n);
    for (int i = 0; i < n; ++i) {
        sc.ue_tx_directions_deg[i] =
            dir_rng.uniform(params.ue_direction_range_deg[0], params.ue_direction_range_deg[1]);
    }

    RandomStream shadow_rng = RandomStream::derive(seed, 0, "shadowing");
    const Matrix chol =
        detail::shadow_cholesky(m, params.shadow_sigma_db, params.intersite_shadow_corr);
    sc.shadow_db = Matrix(n, m);
    std::vector<double> z(m);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) z[k] = shadow_rng.normal();
        for (int j = 0; j < m; ++j) {
            double x = 0.0;
            for (int k = 0; k <= j; ++k) x += chol(j, k) * z[k];
            sc.shadow_db(i, j) = x;
        }
    }

    sc.pl_linear = Matrix(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double d = distance(sc.ue_positions[i], sc.ap_positions[j]);
            const double pl = path_loss_db(params, d, sc.shadow_db(i, j));
            sc.pl_linear(i, j) = std::pow(10.0, -pl / 10.0);
        }
    }
    return sc;
}

inline void to_json(nlohmann::json& j, const Matrix& mat) {
    j = nlohmann::json::array();
    for (int r = 0; r < mat.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < mat.cols(); ++c) row.push_back(mat(r, c));
        j.push_back(row);
    }
}

inline void from_json(const nlohmann::json& j, Matrix& mat) {
    const int rows = static_cast<int>(j.size());
    const int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
    mat = Matrix(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols) throw ValidationError("ragged matrix in JSON");
        for (int c = 0; c < cols; ++c) mat(r, c) = j[r][c].get<double>();
    }
}

inline void to_json(nlohmann::json& j, const NetworkScenario& sc) {
    j = nlohmann::json{{"ue_positions", sc.ue_positions},
                       {"ap_positions", sc.ap_positions},
                       {"ue_tx_directions_deg", sc.ue_tx_directions_deg},
                       {"ue_tx_beamwidth_deg", sc.ue_tx_beamwidth_deg},
                       {"shadow_db", sc.shadow_db},
                       {"pl_linear", sc.pl_linear},
                       {"seed", sc.seed}};
}

inline void from_json(const nlohmann::json& j, NetworkScenario& sc) {
    j.at("ue_positions").get_to(sc.ue_positions);
    j.at("ap_positions").get_to(sc.ap_positions);
    j.at("ue_tx_directions_deg").get_to(sc.ue_tx_directions_deg);
    j.at("ue_tx_beamwidth_deg").get_to(sc.ue_tx_beamwidth_deg);
    j.at("shadow_db").get_to(sc.shadow_db);
    j.at("pl_linear").get_to(sc.pl_linear);
    j.at("seed").get_to(sc.seed);
}

// Self-contained scenario dump: the realization plus the config it came from.
inline nlohmann::json scenario_to_json(const NetworkScenario& sc, const Config& cfg) {
    nlohmann::json j = sc;
    j["config"] = config_to_json(cfg);
    return j;
}

struct ScenarioFile {
    NetworkScenario scenario;
    Config config;
};

inline ScenarioFile load_scenario(const std::string& path) {
    const nlohmann::json j = load_json_file(path);
    ScenarioFile out;
    try {
        out.config = config_from_json(j.at("config"));
        out.scenario = j.get<NetworkScenario>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError("scenario " + path + ": " + e.what());
    }
    return out;
}

}  // namespace beamfair
