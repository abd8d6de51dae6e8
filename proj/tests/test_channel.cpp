#include <catch2/catch_amalgamated.hpp>

#include "beamfair/channel.hpp"
#include "beamfair/rng.hpp"
#include "helpers.hpp"

using namespace beamfair;
using beamfair::testing::manual_gains;
using beamfair::testing::manual_scenario;

TEST_CASE("combined interference gain covers the four alignment cases", "[channel]") {
    const double g90 = mainlobe_gain(90.0, 0.1);
    // aligned on both ends
    CHECK(combined_interference_gain(90, 0, 90, 180, 0, 180, 0.1) == g90 * g90);
    // transmit mainlobe into a receive sidelobe
    CHECK(combined_interference_gain(90, 0, 90, 0, 0, 180, 0.1) == g90 * 0.1);
    // transmit sidelobe into a receive mainlobe
    CHECK(combined_interference_gain(90, 180, 90, 180, 0, 180, 0.1) == 0.1 * g90);
    // misaligned on both ends
    CHECK(combined_interference_gain(90, 180, 90, 0, 0, 180, 0.1) == 0.1 * 0.1);
    // half-beamwidth offsets are sidelobe on both ends
    CHECK(combined_interference_gain(90, 45, 90, 135, 0, 180, 0.1) == 0.1 * 0.1);
}

TEST_CASE("serving gains are dual-mainlobe regardless of pointing", "[channel]") {
    const SimParams params = default_config().params;  // 90 degree UE beams, eps 0.1
    // UE points away from the AP; serving gain still uses both mainlobes
    const NetworkScenario sc = manual_scenario(params, {{5.0, 10.0}}, {{5.0, 0.0}}, {90.0}, 90.0);
    const BeamConfig cfg{{30.0}, {90.0}};
    const ChannelGains gains = build_gains(sc, cfg, params);
    CHECK_THAT(gains.serving_gain(0, 0) / sc.pl_linear(0, 0),
               Catch::Matchers::WithinRel(40.33, 1e-12));  // 3.7 * 10.9
    // interference link: UE mainlobe points north, away from the AP (0.1);
    // AP mainlobe points north, toward the UE (10.9)
    CHECK_THAT(gains.interf_gain(0, 0) / sc.pl_linear(0, 0),
               Catch::Matchers::WithinRel(0.1 * 10.9, 1e-12));
}

TEST_CASE("every interference entry is one of the four exact products", "[channel]") {
    const Config cfg = default_config();
    const NetworkScenario sc = generate_scenario(cfg, 9);
    const BeamConfig beams{{45.0, 30.0, 60.0}, {70.0, 110.0, 90.0}};
    const ChannelGains gains = build_gains(sc, beams, cfg.params);
    const double eps = cfg.params.sidelobe_gain;
    const double tx_main = mainlobe_gain(sc.ue_tx_beamwidth_deg, eps);
    for (int n = 0; n < gains.n_ues(); ++n) {
        for (int m = 0; m < gains.n_aps(); ++m) {
            const double rx_main = mainlobe_gain(beams.widths_deg[m], eps);
            const double pl = sc.pl_linear(n, m);
            const double v = gains.interf_gain(n, m);
            const bool is_case = v == tx_main * rx_main * pl || v == tx_main * eps * pl ||
                                 v == eps * rx_main * pl || v == eps * eps * pl;
            CHECK(is_case);
            CHECK(v > 0.0);
            CHECK(v <= gains.serving_gain(n, m));
        }
    }
}

TEST_CASE("omnidirectional beams on both ends collapse interference onto serving", "[channel]") {
    const Config cfg = default_config();
    NetworkScenario sc = generate_scenario(cfg, 11);
    sc.ue_tx_beamwidth_deg = 360.0;
    const BeamConfig beams{{360.0, 360.0, 360.0}, {90.0, 90.0, 90.0}};
    const ChannelGains gains = build_gains(sc, beams, cfg.params);
    for (int n = 0; n < gains.n_ues(); ++n) {
        for (int m = 0; m < gains.n_aps(); ++m) {
            CHECK(gains.interf_gain(n, m) == gains.serving_gain(n, m));
        }
    }
}

TEST_CASE("interference power sums over the other users only", "[channel]") {
    const double noise = 1e-9;
    SECTION("single UE has an empty sum") {
        const ChannelGains g = manual_gains(Matrix(1, 1, 1e-7), Matrix(1, 1, 1e-8), noise, 1e9);
        CHECK(interference_power({0.5}, g, 0, 0) == 0.0);
    }
    SECTION("zero powers contribute nothing") {
        const ChannelGains g = manual_gains(Matrix(3, 1, 1e-7), Matrix(3, 1, 1e-8), noise, 1e9);
        CHECK(interference_power({0.0, 0.0, 0.0}, g, 1, 0) == 0.0);
    }
    SECTION("two UEs reduce to a single term") {
        Matrix interf(2, 1);
        interf(0, 0) = 3e-8;
        interf(1, 0) = 7e-8;
        const ChannelGains g = manual_gains(Matrix(2, 1, 1e-7), interf, noise, 1e9);
        CHECK(interference_power({0.0, 0.25}, g, 0, 0) == 0.25 * 7e-8);
        CHECK(interference_power({0.0, 0.25}, g, 1, 0) == 0.0);
    }
}

TEST_CASE("sinr definition and monotonicity", "[channel]") {
    const double noise = 2e-9;
    Matrix serving(2, 1);
    serving(0, 0) = 4e-9;
    serving(1, 0) = 1e-7;
    Matrix interf(2, 1);
    interf(0, 0) = 1e-8;
    interf(1, 0) = 5e-8;
    const ChannelGains g = manual_gains(serving, interf, noise, 1e9);

    CHECK(sinr({0.0, 1.0}, g, 0, 0) == 0.0);
    // p h == noise with no interferers
    CHECK(sinr({0.5, 0.0}, g, 0, 0) == 1.0);
    const double base = sinr({0.5, 0.3}, g, 0, 0);
    const double doubled = sinr({0.5, 0.6}, g, 0, 0);
    CHECK(doubled < base);
}

TEST_CASE("achievable rate maximizes over APs with low-index ties", "[channel]") {
    const double noise = 1e-9;
    Matrix serving(1, 3);
    serving(0, 0) = 1e-9;
    serving(0, 1) = 1e-9;
    serving(0, 2) = 0.5e-9;
    const ChannelGains g = manual_gains(serving, Matrix(1, 3, 1e-10), noise, 1e9);
    const RateResult r = achievable_rate({1.0}, g, 0);
    CHECK(r.ap == 0);  // tie between AP 0 and AP 1
    CHECK_THAT(r.rate_bps, Catch::Matchers::WithinRel(1e9, 1e-12));  // SINR 1 at 1 GHz
    CHECK(achievable_rate({0.0}, g, 0).rate_bps == 0.0);
}

TEST_CASE("interference-free rate bounds the achievable rate", "[channel]") {
    const Config cfg = default_config();
    const NetworkScenario sc = generate_scenario(cfg, 21);
    const BeamConfig beams{{45.0, 45.0, 45.0}, {80.0, 90.0, 100.0}};
    const ChannelGains gains = build_gains(sc, beams, cfg.params);
    const double budget = 1.0;
    RandomStream rng(99);
    std::vector<double> p(gains.n_ues());
    for (int rep = 0; rep < 20; ++rep) {
        for (double& v : p) v = rng.uniform(0.0, budget);
        for (int n = 0; n < gains.n_ues(); ++n) {
            CHECK(achievable_rate(p, gains, n).rate_bps <=
                  interference_free_rate(gains, n, budget));
        }
    }
}

TEST_CASE("alone at full power the achievable rate equals the interference-free rate",
          "[channel]") {
    const Config cfg = default_config();
    const NetworkScenario sc = generate_scenario(cfg, 22);
    const BeamConfig beams{{60.0, 30.0, 45.0}, {70.0, 90.0, 110.0}};
    const ChannelGains gains = build_gains(sc, beams, cfg.params);
    const double budget = 0.7;
    std::vector<double> p(gains.n_ues(), 0.0);
    for (int n = 0; n < gains.n_ues(); ++n) {
        p[n] = budget;
        CHECK(achievable_rate(p, gains, n).rate_bps == interference_free_rate(gains, n, budget));
        p[n] = 0.0;
    }
}

TEST_CASE("interference-free rate tracks the receive beamwidth", "[channel]") {
    const Config cfg = default_config();
    const NetworkScenario sc = generate_scenario(cfg, 24);
    const ChannelGains wide =
        build_gains(sc, BeamConfig{{60.0, 60.0, 60.0}, {90.0, 90.0, 90.0}}, cfg.params);
    const ChannelGains narrow =
        build_gains(sc, BeamConfig{{30.0, 30.0, 30.0}, {90.0, 90.0, 90.0}}, cfg.params);
    for (int n = 0; n < wide.n_ues(); ++n) {
        CHECK(interference_free_rate(narrow, n, 1.0) > interference_free_rate(wide, n, 1.0));
    }
}

TEST_CASE("single-AP interference-free rate follows the gain exactly", "[channel]") {
    const double noise = 1e-9;
    const double h = 3e-9;
    const double budget = 0.5;
    const ChannelGains g = manual_gains(Matrix(1, 1, h), Matrix(1, 1, 1e-10), noise, 1e9);
    const ChannelGains g2 = manual_gains(Matrix(1, 1, 2 * h), Matrix(1, 1, 1e-10), noise, 1e9);
    CHECK(interference_free_rate(g, 0, budget) == 1e9 * log2_1p(budget * h / noise));
    CHECK(interference_free_rate(g2, 0, budget) == 1e9 * log2_1p(budget * 2 * h / noise));
    CHECK_THROWS_AS(interference_free_rate(g, 0, 0.0), ValidationError);
}

TEST_CASE("gains export to JSON for inspection", "[channel]") {
    const Config cfg = default_config();
    const NetworkScenario sc = generate_scenario(cfg, 25);
    const BeamConfig beams{{45.0, 60.0, 30.0}, {80.0, 90.0, 100.0}};
    const ChannelGains gains = build_gains(sc, beams, cfg.params);
    const nlohmann::json j = gains;
    CHECK(j.at("serving_gain").size() == 20);
    CHECK(j.at("interf_gain")[0].size() == 3);
    CHECK(j.at("noise_w").get<double>() == gains.noise_w);
    CHECK(j.at("bandwidth_hz").get<double>() == 1e9);
    const Matrix serving = j.at("serving_gain").get<Matrix>();
    CHECK(serving == gains.serving_gain);
}

TEST_CASE("rates respond monotonically to power changes", "[channel]") {
    const Config cfg = default_config();
    const NetworkScenario sc = generate_scenario(cfg, 23);
    const BeamConfig beams{{30.0, 30.0, 30.0}, {80.0, 90.0, 100.0}};
    const ChannelGains gains = build_gains(sc, beams, cfg.params);
    RandomStream rng(5);
    std::vector<double> p(gains.n_ues());
    for (int rep = 0; rep < 10; ++rep) {
        for (double& v : p) v = rng.uniform(0.0, 1.0);
        const int n = static_cast<int>(rng.below(gains.n_ues()));
        int other = static_cast<int>(rng.below(gains.n_ues()));
        if (other == n) other = (other + 1) % gains.n_ues();
        const double base = achievable_rate(p, gains, n).rate_bps;

        std::vector<double> more_interference = p;
        more_interference[other] = p[other] * 2.0 + 0.1;
        CHECK(achievable_rate(more_interference, gains, n).rate_bps <= base);

        std::vector<double> more_own = p;
        more_own[n] = p[n] * 2.0 + 0.1;
        CHECK(achievable_rate(more_own, gains, n).rate_bps >= base);
    }
}
