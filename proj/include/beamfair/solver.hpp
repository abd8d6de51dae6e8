#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <json.hpp>

#include "beamfair/channel.hpp"
#include "beamfair/errors.hpp"
#include "beamfair/rng.hpp"

namespace beamfair {

// The concave interference mapping whose normalized fixed point solves the
// common-fraction rate allocation for a fixed beam configuration.
struct InterferenceMapping {
    ChannelGains gains;
    std::vector<double> ifr;  // per-UE interference-free rate, bit/s
    double bandwidth_hz = 0.0;
    double noise_w = 0.0;

    int n_ues() const { return gains.n_ues(); }
};

inline InterferenceMapping make_mapping(const ChannelGains& gains, double power_budget_w) {
    InterferenceMapping mapping;
    mapping.gains = gains;
    mapping.bandwidth_hz = gains.bandwidth_hz;
    mapping.noise_w = gains.noise_w;
    mapping.ifr.resize(gains.n_ues());
    for (int n = 0; n < gains.n_ues(); ++n) {
        mapping.ifr[n] = interference_free_rate(gains, n, power_budget_w);
        assert(mapping.ifr[n] > 0.0);  // positive gains and budget rule out 0
    }
    return mapping;
}

namespace detail {

// Mapping component of UE n restricted to AP m: ifr_n * p_n / rate_n(p, m)
// for positive power, continuously extended at p_n = 0 to
// ifr_n * ln2 * (interference + noise) / (W * serving_gain).
inline double component_at_ap(const InterferenceMapping& mapping, const std::vector<double>& p,
                              int n, int m) {
    const ChannelGains& g = mapping.gains;
    const double denom = interference_power(p, g, n, m) + g.noise_w;
    if (p[n] > 0.0) {
        const double s = p[n] * g.serving_gain(n, m) / denom;
        return mapping.ifr[n] * p[n] / (mapping.bandwidth_hz * log2_1p(s));
    }
    return mapping.ifr[n] * kLn2 * denom / (mapping.bandwidth_hz * g.serving_gain(n, m));
}

}  // namespace detail

// One application of the mapping: component n is the smallest per-AP value.
// The output is strictly positive for every nonnegative input.
inline std::vector<double> apply_T(const InterferenceMapping& mapping,
                                   const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != mapping.n_ues()) {
        throw ValidationError("apply_T: power vector dimension mismatch");
    }
    std::vector<double> out(mapping.n_ues());
    for (int n = 0; n < mapping.n_ues(); ++n) {
        if (!(p[n] >= 0.0)) throw ValidationError("apply_T: power vector must be nonnegative");
        double best = std::numeric_limits<double>::infinity();
        for (int m = 0; m < mapping.gains.n_aps(); ++m) {
            best = std::min(best, detail::component_at_ap(mapping, p, n, m));
        }
        out[n] = best;
    }
    return out;
}

// Optimal AP per UE at the solved powers: the AP minimizing the per-AP
// mapping component, which is the rate-maximizing AP. Ties to lowest index.
inline std::vector<int> recover_assignment(const InterferenceMapping& mapping,
                                           const std::vector<double>& p_star) {
    if (static_cast<int>(p_star.size()) != mapping.n_ues()) {
        throw ValidationError("recover_assignment: power vector dimension mismatch");
    }
    std::vector<int> assignment(mapping.n_ues());
    for (int n = 0; n < mapping.n_ues(); ++n) {
        int best_ap = 0;
        double best = detail::component_at_ap(mapping, p_star, n, 0);
        for (int m = 1; m < mapping.gains.n_aps(); ++m) {
            const double value = detail::component_at_ap(mapping, p_star, n, m);
            if (value < best) {
                best = value;
                best_ap = m;
            }
        }
        assignment[n] = best_ap;
    }
    return assignment;
}

struct SolveOptions {
    double tol = 1e-10;  // on the sup-norm step, relative to the budget
    int max_iter = 10000;
    std::optional<std::vector<double>> p0;  // default: budget in every component
    bool record_residuals = false;
};

struct PowerSolution {
    std::vector<double> p_star_w;
    double c_star = 0.0;
    std::vector<int> assignment;
    int iterations = 0;
    double residual = 0.0;
    std::vector<double> per_ue_fraction;
    bool converged = false;
    std::vector<double> residual_history;  // filled when requested
};

// Normalized fixed-point iteration
//   x <- (budget / ||T(x)||_inf) * T(x)
// run until the sup-norm step drops below tol * budget. The common fraction
// is the final normalization constant budget / ||T(x)||_inf; the achieved
// per-UE fractions are reported alongside as a cross-check.
inline PowerSolution solve_fixed_point(const InterferenceMapping& mapping, double power_budget_w,
                                       const SolveOptions& opts = {}) {
    if (!(power_budget_w > 0.0)) {
        throw ValidationError("solve_fixed_point: power budget must be positive");
    }
    if (!(opts.tol > 0.0)) throw ValidationError("solve_fixed_point: tol must be positive");
    if (opts.max_iter < 1) throw ValidationError("solve_fixed_point: max_iter must be >= 1");
    const int n = mapping.n_ues();

    PowerSolution sol;
    std::vector<double> p = opts.p0.value_or(std::vector<double>(n, power_budget_w));
    if (static_cast<int>(p.size()) != n) {
        throw ValidationError("solve_fixed_point: p0 dimension mismatch");
    }

    double norm = 0.0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        const std::vector<double> t = apply_T(mapping, p);
        norm = *std::max_element(t.begin(), t.end());
        const double scale = power_budget_w / norm;
        double residual = 0.0;
        for (int k = 0; k < n; ++k) {
            const double next = scale * t[k];
            residual = std::max(residual, std::abs(next - p[k]));
            p[k] = next;
        }
        sol.iterations = it;
        sol.residual = residual;
        if (opts.record_residuals) sol.residual_history.push_back(residual);
        if (residual <= opts.tol * power_budget_w) {
            sol.converged = true;
            break;
        }
    }

    sol.p_star_w = std::move(p);
    sol.c_star = power_budget_w / norm;
    sol.assignment = recover_assignment(mapping, sol.p_star_w);
    sol.per_ue_fraction.resize(n);
    for (int k = 0; k < n; ++k) {
        sol.per_ue_fraction[k] =
            achievable_rate(sol.p_star_w, mapping.gains, k).rate_bps / mapping.ifr[k];
    }
    return sol;
}

struct SifReport {
    int samples = 0;
    int scalability_violations = 0;
    int monotonicity_violations = 0;
    double worst_scalability_margin = std::numeric_limits<double>::infinity();
    double worst_monotonicity_margin = std::numeric_limits<double>::infinity();

    bool pass() const { return scalability_violations == 0 && monotonicity_violations == 0; }
};

// Probes an arbitrary mapping fn: R^dim_+ -> R^dim_++ for the two standard
// interference axioms with seeded random inputs:
//   scalability   alpha * T(p) > T(alpha * p)   elementwise, strict
//   monotonicity  p1 >= p2  =>  T(p1) >= T(p2)  elementwise, weak
// Component scales are uniform in [0, scale] with occasional exact zeros so
// the continuous extension is exercised too.
template <typename MapFn>
SifReport verify_sif_axioms_fn(MapFn&& fn, int dim, double scale, int sample_count,
                               std::uint64_t seed, double alpha_exp_min = -6.0,
                               double alpha_exp_max = 1.0) {
    if (sample_count < 1) throw ValidationError("verify_sif_axioms: sample_count must be >= 1");
    RandomStream rng = RandomStream::derive(seed, 0, "sif-probes");
    SifReport report;
    report.samples = sample_count;

    std::vector<double> p1(dim), p2(dim), scaled(dim);
    for (int s = 0; s < sample_count; ++s) {
        for (int k = 0; k < dim; ++k) {
            p1[k] = rng.uniform01() < 0.1 ? 0.0 : rng.uniform(0.0, scale);
        }
        const double alpha = 1.0 + std::pow(10.0, rng.uniform(alpha_exp_min, alpha_exp_max));
        for (int k = 0; k < dim; ++k) scaled[k] = alpha * p1[k];
        const std::vector<double> t1 = fn(p1);
        const std::vector<double> t_scaled = fn(scaled);
        for (int k = 0; k < dim; ++k) {
            const double margin = alpha * t1[k] - t_scaled[k];
            report.worst_scalability_margin = std::min(report.worst_scalability_margin, margin);
            if (!(margin > 0.0)) ++report.scalability_violations;
        }

        for (int k = 0; k < dim; ++k) p2[k] = p1[k] * rng.uniform01();
        const std::vector<double> t2 = fn(p2);
        for (int k = 0; k < dim; ++k) {
            const double margin = t1[k] - t2[k];
            report.worst_monotonicity_margin = std::min(report.worst_monotonicity_margin, margin);
            if (margin < 0.0) ++report.monotonicity_violations;
        }
    }
    return report;
}

inline SifReport verify_sif_axioms(const InterferenceMapping& mapping, int sample_count,
                                   std::uint64_t seed, double p_scale = 1.0) {
    return verify_sif_axioms_fn([&](const std::vector<double>& p) { return apply_T(mapping, p); },
                                mapping.n_ues(), p_scale, sample_count, seed);
}

// Full solve for one (scenario, beam configuration) pair at the given budget.
// The interference-free rates are rebuilt for every configuration since the
// serving gains depend on the receive beamwidths.
inline PowerSolution solve_for_config(const NetworkScenario& scenario, const BeamConfig& config,
                                      const SimParams& params, double power_budget_w,
                                      const SolveOptions& opts = {}) {
    const ChannelGains gains = build_gains(scenario, config, params);
    const InterferenceMapping mapping = make_mapping(gains, power_budget_w);
    return solve_fixed_point(mapping, power_budget_w, opts);
}

// The search objective: the common fraction achieved by the optimal power
// allocation under this beam configuration.
inline double utility(const NetworkScenario& scenario, const BeamConfig& config,
                      const SimParams& params, const SolveOptions& opts = {}) {
    const PowerSolution sol =
        solve_for_config(scenario, config, params, params.power_budget_w(), opts);
    if (!sol.converged) {
        throw ConvergenceError("utility: fixed-point iteration did not converge", sol.iterations,
                               sol.residual);
    }
    return sol.c_star;
}

inline void to_json(nlohmann::json& j, const PowerSolution& sol) {
    std::vector<double> p_dbm(sol.p_star_w.size());
    for (std::size_t i = 0; i < sol.p_star_w.size(); ++i) p_dbm[i] = watts_to_dbm(sol.p_star_w[i]);
    j = nlohmann::json{{"p_star_w", sol.p_star_w},
                       {"p_star_dbm", p_dbm},
                       {"c_star", sol.c_star},
                       {"assignment", sol.assignment},
                       {"iterations", sol.iterations},
                       {"residual", sol.residual},
                       {"per_ue_fraction", sol.per_ue_fraction},
                       {"converged", sol.converged}};
}

}  // namespace beamfair
