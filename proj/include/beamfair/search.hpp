#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

#include "beamfair/beams.hpp"
#include "beamfair/parallel.hpp"
#include "beamfair/solver.hpp"

namespace beamfair {

// ---------------------------------------------------------------------------
// Configuration space
// ---------------------------------------------------------------------------

// |widths|^M * |directions|^M, guarded against overflow.
inline std::uint64_t config_space_size(const SimParams& params) {
    const std::uint64_t w = params.ap_beamwidth_set_deg.size();
    const std::uint64_t d = params.ap_direction_set_deg.size();
    std::uint64_t size = 1;
    for (int m = 0; m < params.n_aps; ++m) {
        for (std::uint64_t base : {w, d}) {
            if (size > UINT64_MAX / base) {
                throw ValidationError("config_space_size: search space exceeds 2^64");
            }
            size *= base;
        }
    }
    return size;
}

// Configuration at a flat index. Indices follow lexicographic order of the
// tuple (width_1..width_M, dir_1..dir_M), last element fastest.
inline BeamConfig config_at(const SimParams& params, std::uint64_t index) {
    const int m = params.n_aps;
    const std::uint64_t w = params.ap_beamwidth_set_deg.size();
    const std::uint64_t d = params.ap_direction_set_deg.size();

    BeamConfig cfg;
    cfg.widths_deg.resize(m);
    cfg.directions_deg.resize(m);
    for (int k = m - 1; k >= 0; --k) {
        cfg.directions_deg[k] = params.ap_direction_set_deg[index % d];
        index /= d;
    }
    for (int k = m - 1; k >= 0; --k) {
        cfg.widths_deg[k] = params.ap_beamwidth_set_deg[index % w];
        index /= w;
    }
    return cfg;
}

inline std::uint64_t config_index(const SimParams& params, const BeamConfig& cfg) {
    validate_beam_config(params, cfg);
    auto rank = [](const std::vector<double>& set, double v) {
        return static_cast<std::uint64_t>(
            std::find(set.begin(), set.end(), v) - set.begin());
    };
    std::uint64_t index = 0;
    for (double width : cfg.widths_deg) {
        index = index * params.ap_beamwidth_set_deg.size() + rank(params.ap_beamwidth_set_deg, width);
    }
    for (double dir : cfg.directions_deg) {
        index = index * params.ap_direction_set_deg.size() + rank(params.ap_direction_set_deg, dir);
    }
    return index;
}

// The full candidate set, in index order.
inline std::vector<BeamConfig> enumerate_configs(const SimParams& params) {
    const std::uint64_t size = config_space_size(params);
    if (size > 50'000'000ULL) {
        throw ValidationError("enumerate_configs: search space too large to materialize");
    }
    std::vector<BeamConfig> out;
    out.reserve(size);
    for (std::uint64_t i = 0; i < size; ++i) out.push_back(config_at(params, i));
    return out;
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

inline double tdma_fraction(int n_ues) {
    if (n_ues < 1) throw ValidationError("tdma_fraction: n_ues must be >= 1");
    return 1.0 / n_ues;
}

// Uncoordinated baseline: every UE transmits at the full budget.
struct ReferenceResult {
    std::vector<double> rates_bps;
    std::vector<double> fractions;
    double min_fraction = 0.0;
    double min_rate_bps = 0.0;
};

inline ReferenceResult reference_full_power(const NetworkScenario& scenario,
                                            const BeamConfig& config, const SimParams& params,
                                            double power_budget_w) {
    const ChannelGains gains = build_gains(scenario, config, params);
    const int n = gains.n_ues();
    const std::vector<double> p(n, power_budget_w);

    ReferenceResult out;
    out.rates_bps.resize(n);
    out.fractions.resize(n);
    out.min_fraction = std::numeric_limits<double>::infinity();
    out.min_rate_bps = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
        out.rates_bps[k] = achievable_rate(p, gains, k).rate_bps;
        out.fractions[k] = out.rates_bps[k] / interference_free_rate(gains, k, power_budget_w);
        out.min_fraction = std::min(out.min_fraction, out.fractions[k]);
        out.min_rate_bps = std::min(out.min_rate_bps, out.rates_bps[k]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Simulated annealing
// ---------------------------------------------------------------------------

struct SaParams {
    double tau_max = 42.0;
    double tau_min = 1e-20;
    int i_max = 42;
    int stall_limit = 10;  // temperature stages without a new best before stopping
    std::uint64_t seed = 0;

    void validate() const {
        if (!(tau_max > tau_min && tau_min > 0.0)) {
            throw ValidationError("sa: need tau_max > tau_min > 0");
        }
        if (i_max < 1) throw ValidationError("sa: i_max must be >= 1");
        if (stall_limit < 1) throw ValidationError("sa: stall_limit must be >= 1");
    }
};

inline double acceptance_probability(double delta_u, double tau) {
    if (!(tau > 0.0)) throw ValidationError("acceptance_probability: tau must be positive");
    return delta_u > 0.0 ? 1.0 : std::exp(delta_u / tau);
}

struct TraceRecord {
    int step = 0;
    BeamConfig state;
    double utility = 0.0;
    double delta_u = 0.0;
    double acceptance_prob = 0.0;
    bool accepted = false;
    double temperature = 0.0;
};

struct SearchTrace {
    std::vector<TraceRecord> records;
    std::vector<double> best_so_far;  // per record

    int evaluations() const { return static_cast<int>(records.size()); }
};

struct SaResult {
    BeamConfig best_config;
    double best_utility = 0.0;
    PowerSolution solution;  // re-solved at best_config
    SearchTrace trace;
    std::uint64_t unique_evaluations = 0;  // fixed-point solves (cache misses)
};

// Initial state: the widest available beam on every AP, steered to the
// candidate direction closest to the bearing from the AP to the center of
// the UE area.
inline BeamConfig initial_beam_config(const SimParams& params,
                                      const std::vector<Point>& ap_positions) {
    const Point centroid{params.area_m[0] / 2.0, params.area_m[1] / 2.0};
    BeamConfig cfg;
    cfg.widths_deg.assign(params.n_aps, params.ap_beamwidth_set_deg.back());
    cfg.directions_deg.resize(params.n_aps);
    for (int m = 0; m < params.n_aps; ++m) {
        double best_dir = params.ap_direction_set_deg.front();
        if (!(ap_positions[m] == centroid)) {
            const double bearing = los_bearing(ap_positions[m], centroid);
            double best_dist = std::numeric_limits<double>::infinity();
            for (double candidate : params.ap_direction_set_deg) {
                const double dist = angular_diff(candidate, bearing);
                if (dist < best_dist) {
                    best_dist = dist;
                    best_dir = candidate;
                }
            }
        }
        cfg.directions_deg[m] = best_dir;
    }
    return cfg;
}

// Single-chain annealing over the discrete configuration space. Candidates
// are drawn uniformly from the whole space minus the current state; repeat
// visits are served from a per-run utility cache. The incumbent best over
// all evaluated states is returned, re-solved at full precision.
inline SaResult simulated_annealing(const NetworkScenario& scenario, const SimParams& params,
                                    const SaParams& sa, const SolveOptions& solve_opts = {}) {
    sa.validate();
    const std::uint64_t q_size = config_space_size(params);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::unordered_map<std::uint64_t, double> cache;
    auto evaluate = [&](std::uint64_t index) {
        auto it = cache.find(index);
        if (it != cache.end()) return it->second;
        double u;
        try {
            u = utility(scenario, config_at(params, index), params, solve_opts);
        } catch (const ConvergenceError&) {
            u = nan;  // failed candidate: recorded, never accepted
        }
        cache.emplace(index, u);
        return u;
    };

    SaResult result;
    SearchTrace& trace = result.trace;

    std::uint64_t current = config_index(params, initial_beam_config(params, scenario.ap_positions));
    double current_u = evaluate(current);
    std::uint64_t best = current;
    double best_u = std::isnan(current_u) ? -std::numeric_limits<double>::infinity() : current_u;
    trace.records.push_back({0, config_at(params, current), current_u, 0.0, 1.0, true, sa.tau_max});
    trace.best_so_far.push_back(best_u);

    RandomStream rng = RandomStream::derive(sa.seed, 0, "sa-chain");
    double tau = sa.tau_max;
    int step = 0;
    int stall = 0;
    while (q_size > 1 && tau > sa.tau_min && stall < sa.stall_limit) {
        bool improved = false;
        for (int i = 0; i < sa.i_max; ++i) {
            std::uint64_t candidate;
            do {
                candidate = rng.below(q_size);
            } while (candidate == current);
            const double u = evaluate(candidate);
            ++step;
            if (std::isnan(u)) {
                trace.records.push_back({step, config_at(params, candidate), u, nan, 0.0, false, tau});
                trace.best_so_far.push_back(best_u);
                continue;
            }
            const double delta = u - current_u;
            bool accepted;
            double prob;
            if (std::isnan(current_u) || delta > 0.0) {
                prob = 1.0;
                accepted = true;
            } else {
                prob = acceptance_probability(delta, tau);
                accepted = prob > rng.uniform01();
            }
            trace.records.push_back({step, config_at(params, candidate), u, delta, prob, accepted, tau});
            if (accepted) {
                current = candidate;
                current_u = u;
            }
            if (u > best_u) {
                best = candidate;
                best_u = u;
                improved = true;
            }
            trace.best_so_far.push_back(best_u);
        }
        tau /= std::log(static_cast<double>(sa.i_max) + 1.0);
        stall = improved ? 0 : stall + 1;
    }

    result.best_config = config_at(params, best);
    result.best_utility = best_u;
    result.unique_evaluations = cache.size();
    result.solution =
        solve_for_config(scenario, result.best_config, params, params.power_budget_w(), solve_opts);
    return result;
}

// ---------------------------------------------------------------------------
// Brute force
// ---------------------------------------------------------------------------

struct BfResult {
    BeamConfig best_config;
    double best_utility = 0.0;
    std::uint64_t best_index = 0;
    PowerSolution solution;
    std::vector<double> utilities;  // enumeration order
};

// Exhaustive sweep of the configuration space; the global-optimum oracle.
// Ties resolve to the lexicographically smallest configuration.
inline BfResult brute_force(const NetworkScenario& scenario, const SimParams& params,
                            std::uint64_t eval_cap = 1'000'000,
                            const SolveOptions& solve_opts = {}) {
    const std::uint64_t q_size = config_space_size(params);
    if (q_size > eval_cap) {
        throw ValidationError("brute_force: " + std::to_string(q_size) +
                              " configurations exceed the evaluation cap of " +
                              std::to_string(eval_cap));
    }

    BfResult result;
    result.utilities.assign(q_size, std::numeric_limits<double>::quiet_NaN());
    parallel_for(q_size, [&](std::size_t i) {
        try {
            result.utilities[i] = utility(scenario, config_at(params, i), params, solve_opts);
        } catch (const ConvergenceError&) {
        }
    });

    double best_u = -std::numeric_limits<double>::infinity();
    std::uint64_t best = 0;
    for (std::uint64_t i = 0; i < q_size; ++i) {
        if (result.utilities[i] > best_u) {
            best_u = result.utilities[i];
            best = i;
        }
    }
    result.best_index = best;
    result.best_utility = best_u;
    result.best_config = config_at(params, best);
    result.solution =
        solve_for_config(scenario, result.best_config, params, params.power_budget_w(), solve_opts);
    return result;
}

}  // namespace beamfair
