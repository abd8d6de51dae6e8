#pragma once

#include <vector>

#include <json.hpp>

#include "beamfair/antenna.hpp"
#include "beamfair/beams.hpp"
#include "beamfair/geometry.hpp"
#include "beamfair/matrix.hpp"
#include "beamfair/scenario.hpp"

namespace beamfair {

// Link power gains for one (scenario, beam configuration) pair.
//
// serving_gain(n, m) always combines both mainlobes: it is the gain UE n
// would see if AP m served it. interf_gain(n, m) is the gain of UE n's
// signal as interference at AP m, with mainlobe/sidelobe factors selected
// from the actual beam geometry on both ends.
struct ChannelGains {
    Matrix serving_gain;  // UEs x APs
    Matrix interf_gain;   // UEs x APs
    double noise_w = 0.0;
    double bandwidth_hz = 0.0;

    int n_ues() const { return serving_gain.rows(); }
    int n_aps() const { return serving_gain.cols(); }
};

// Combined transmit and receive gain factor of an interference link. Each
// end contributes its mainlobe gain when the line-of-sight bearing falls
// strictly inside the half-beamwidth around its boresight, and the sidelobe
// floor otherwise; the four possible products are returned exactly.
inline double combined_interference_gain(double tx_width_deg, double tx_dir_deg,
                                         double rx_width_deg, double rx_dir_deg,
                                         double bearing_ue_to_ap_deg, double bearing_ap_to_ue_deg,
                                         double sidelobe) {
    const double tx_gain =
        sector_gain(tx_width_deg, sidelobe, angular_diff(bearing_ue_to_ap_deg, tx_dir_deg));
    const double rx_gain =
        sector_gain(rx_width_deg, sidelobe, angular_diff(bearing_ap_to_ue_deg, rx_dir_deg));
    return tx_gain * rx_gain;
}

inline ChannelGains build_gains(const NetworkScenario& scenario, const BeamConfig& config,
                                const SimParams& params) {
    const int n = scenario.n_ues();
    const int m = scenario.n_aps();
    if (static_cast<int>(config.widths_deg.size()) != m ||
        static_cast<int>(config.directions_deg.size()) != m) {
        throw ValidationError("build_gains: beam config dimension mismatch");
    }

    ChannelGains gains;
    gains.noise_w = params.noise_w();
    gains.bandwidth_hz = params.bandwidth_hz;
    gains.serving_gain = Matrix(n, m);
    gains.interf_gain = Matrix(n, m);

    const double eps = params.sidelobe_gain;
    const double tx_main = mainlobe_gain(scenario.ue_tx_beamwidth_deg, eps);
    for (int j = 0; j < m; ++j) {
        const double rx_main = mainlobe_gain(config.widths_deg[j], eps);
        for (int i = 0; i < n; ++i) {
            const double pl = scenario.pl_linear(i, j);
            gains.serving_gain(i, j) = tx_main * rx_main * pl;
            const double ue_to_ap = los_bearing(scenario.ue_positions[i], scenario.ap_positions[j]);
            const double ap_to_ue = los_bearing(scenario.ap_positions[j], scenario.ue_positions[i]);
            gains.interf_gain(i, j) =
                combined_interference_gain(scenario.ue_tx_beamwidth_deg,
                                           scenario.ue_tx_directions_deg[i], config.widths_deg[j],
                                           config.directions_deg[j], ue_to_ap, ap_to_ue, eps) *
                pl;
        }
    }
    return gains;
}

// Total interference UE n sees at AP m: every other UE's power through its
// interference gain. Summed in ascending UE order.
inline double interference_power(const std::vector<double>& p, const ChannelGains& gains, int n,
                                 int m) {
    double total = 0.0;
    for (int k = 0; k < gains.n_ues(); ++k) {
        if (k != n) total += p[k] * gains.interf_gain(k, m);
    }
    return total;
}

inline double sinr(const std::vector<double>& p, const ChannelGains& gains, int n, int m) {
    return p[n] * gains.serving_gain(n, m) / (interference_power(p, gains, n, m) + gains.noise_w);
}

struct RateResult {
    double rate_bps = 0.0;
    int ap = 0;
};

// Rate at the best AP for UE n. Ties go to the lowest AP index.
inline RateResult achievable_rate(const std::vector<double>& p, const ChannelGains& gains, int n) {
    RateResult best{-1.0, 0};
    for (int m = 0; m < gains.n_aps(); ++m) {
        const double rate = gains.bandwidth_hz * log2_1p(sinr(p, gains, n, m));
        if (rate > best.rate_bps) best = {rate, m};
    }
    return best;
}

// Rate of UE n transmitting alone at full budget to its best AP.
inline double interference_free_rate(const ChannelGains& gains, int n, double power_budget_w) {
    if (!(power_budget_w > 0.0)) {
        throw ValidationError("interference_free_rate: power budget must be positive");
    }
    double best = 0.0;
    for (int m = 0; m < gains.n_aps(); ++m) {
        const double rate =
            gains.bandwidth_hz * log2_1p(power_budget_w * gains.serving_gain(n, m) / gains.noise_w);
        if (rate > best) best = rate;
    }
    return best;
}

inline void to_json(nlohmann::json& j, const ChannelGains& g) {
    j = nlohmann::json{{"serving_gain", g.serving_gain},
                       {"interf_gain", g.interf_gain},
                       {"noise_w", g.noise_w},
                       {"bandwidth_hz", g.bandwidth_hz}};
}

}  // namespace beamfair
