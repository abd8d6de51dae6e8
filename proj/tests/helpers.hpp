#pragma once

// Shared fixtures for the unit suites: hand-built scenarios and gains with
// fully controlled geometry.

#include <vector>

#include "beamfair/channel.hpp"
#include "beamfair/params.hpp"
#include "beamfair/scenario.hpp"

namespace beamfair::testing {

// Scenario assembled directly from positions and directions; shadowing zero.
inline NetworkScenario manual_scenario(const SimParams& params, std::vector<Point> ues,
                                       std::vector<Point> aps, std::vector<double> tx_dirs_deg,
                                       double tx_width_deg) {
    NetworkScenario sc;
    sc.ue_positions = std::move(ues);
    sc.ap_positions = std::move(aps);
    sc.ue_tx_directions_deg = std::move(tx_dirs_deg);
    sc.ue_tx_beamwidth_deg = tx_width_deg;
    const int n = sc.n_ues();
    const int m = sc.n_aps();
    sc.shadow_db = Matrix(n, m);
    sc.pl_linear = Matrix(n, m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const double d = distance(sc.ue_positions[i], sc.ap_positions[j]);
            sc.pl_linear(i, j) = std::pow(10.0, -path_loss_db(params, d, 0.0) / 10.0);
        }
    }
    return sc;
}

// Gains filled in directly, bypassing geometry.
inline ChannelGains manual_gains(const Matrix& serving, const Matrix& interf, double noise_w,
                                 double bandwidth_hz) {
    ChannelGains g;
    g.serving_gain = serving;
    g.interf_gain = interf;
    g.noise_w = noise_w;
    g.bandwidth_hz = bandwidth_hz;
    return g;
}

// Two mirrored UEs and APs with exactly symmetric gains. The serving link h
// dominates; hx is the weaker cross serving link; gx the interference gain
// at the other AP, gs at the serving AP of the interferer's own mirror.
struct SymmetricPair {
    ChannelGains gains;
    double h;
    double hx;
    double gx;
    double noise_w;
    double bandwidth_hz;
};

inline SymmetricPair symmetric_pair(double h = 2.7e-7, double hx = 0.5e-7, double gx = 2.0e-8,
                                    double gs = 1.0e-8, double noise_w = 3.16e-9,
                                    double bandwidth_hz = 1e9) {
    Matrix serving(2, 2);
    serving(0, 0) = h;
    serving(0, 1) = hx;
    serving(1, 0) = hx;
    serving(1, 1) = h;
    Matrix interf(2, 2);
    interf(0, 0) = gs;
    interf(0, 1) = gx;
    interf(1, 0) = gx;
    interf(1, 1) = gs;
    return {manual_gains(serving, interf, noise_w, bandwidth_hz), h, hx, gx, noise_w,
            bandwidth_hz};
}

}  // namespace beamfair::testing
