#pragma once

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "beamfair/csv.hpp"
#include "beamfair/metrics.hpp"
#include "beamfair/parallel.hpp"
#include "beamfair/scenario.hpp"
#include "beamfair/search.hpp"
#include "beamfair/solver.hpp"

namespace beamfair {

inline std::vector<double> default_budget_sweep_dbm() {
    std::vector<double> budgets;
    for (double b = -20.0; b <= 40.0; b += 2.0) budgets.push_back(b);
    return budgets;
}

enum class ExperimentMode { solve, sweep, sa, bf, compare };

inline std::string to_string(ExperimentMode mode) {
    switch (mode) {
        case ExperimentMode::solve: return "solve";
        case ExperimentMode::sweep: return "sweep";
        case ExperimentMode::sa: return "sa";
        case ExperimentMode::bf: return "bf";
        case ExperimentMode::compare: return "compare";
    }
    throw ValidationError("unknown experiment mode");
}

inline ExperimentMode experiment_mode_from_string(const std::string& s) {
    for (ExperimentMode mode : {ExperimentMode::solve, ExperimentMode::sweep, ExperimentMode::sa,
                                ExperimentMode::bf, ExperimentMode::compare}) {
        if (to_string(mode) == s) return mode;
    }
    throw ValidationError("unknown experiment mode: " + s);
}

// One experiment invocation: which scenario stream to use, which budgets and
// beam configuration, and where outputs go.
struct ExperimentSpec {
    ExperimentMode mode = ExperimentMode::solve;
    Config config = default_config();
    std::uint64_t seed = 1;
    int trials = 500;                  // sweep realizations / annealing chains in compare
    std::vector<double> budgets_dbm = default_budget_sweep_dbm();
    std::optional<BeamConfig> fixed_config;  // solve and sweep; defaults to initial_beam_config
    std::string out_prefix;
    SolveOptions solve;
    SaParams sa;
    std::uint64_t bf_cap = 1'000'000;

    BeamConfig resolve_fixed_config() const {
        BeamConfig cfg = fixed_config ? *fixed_config
                                      : initial_beam_config(config.params, config.ap_positions);
        validate_beam_config(config.params, cfg);
        return cfg;
    }

    void validate() const {
        config.validate();
        if (trials < 1) throw ValidationError("trials must be >= 1");
        if (budgets_dbm.empty()) throw ValidationError("budget list must be nonempty");
        for (std::size_t i = 1; i < budgets_dbm.size(); ++i) {
            if (!(budgets_dbm[i] > budgets_dbm[i - 1])) {
                throw ValidationError("budget list must be strictly ascending");
            }
        }
        if (fixed_config) validate_beam_config(config.params, *fixed_config);
        sa.validate();
    }
};

// ---------------------------------------------------------------------------
// Power sweep (proposed vs reference vs TDMA over a budget grid)
// ---------------------------------------------------------------------------

struct SweepTrialRow {
    double budget_dbm = 0.0;
    int trial = 0;
    bool ok = false;
    // proposed scheme
    double proposed_c = 0.0;
    double proposed_min_rate_bps = 0.0;
    double proposed_jain_rates = 0.0;
    double proposed_jain_fractions = 0.0;
    // full-power reference
    double reference_min_fraction = 0.0;
    double reference_min_rate_bps = 0.0;
    double reference_jain_rates = 0.0;
    double reference_jain_fractions = 0.0;
    // TDMA line
    double tdma_fraction_value = 0.0;
    double tdma_min_rate_bps = 0.0;
    double tdma_jain_rates = 0.0;
};

struct SweepResult {
    std::vector<SweepTrialRow> rows;  // budget-major, trial-minor
    int failed_trials = 0;
};

// Scenario for sweep trial t; every budget reuses the same realization.
inline NetworkScenario sweep_scenario(const ExperimentSpec& spec, int trial) {
    return generate_scenario(spec.config, derive_seed(spec.seed, trial, "scenario"));
}

inline SweepResult run_power_sweep(const ExperimentSpec& spec) {
    spec.validate();
    const BeamConfig beam_config = spec.resolve_fixed_config();
    const SimParams& params = spec.config.params;
    const std::size_t n_budgets = spec.budgets_dbm.size();
    const std::size_t n_rows = n_budgets * spec.trials;

    SweepResult result;
    result.rows.assign(n_rows, SweepTrialRow{});
    parallel_for(n_rows, [&](std::size_t i) {
        const std::size_t b = i / spec.trials;
        const int trial = static_cast<int>(i % spec.trials);
        SweepTrialRow& row = result.rows[i];
        row.budget_dbm = spec.budgets_dbm[b];
        row.trial = trial;

        const NetworkScenario scenario = sweep_scenario(spec, trial);
        const double budget_w = dbm_to_watts(row.budget_dbm);
        const ChannelGains gains = build_gains(scenario, beam_config, params);
        const InterferenceMapping mapping = make_mapping(gains, budget_w);

        const PowerSolution sol = solve_fixed_point(mapping, budget_w, spec.solve);
        if (!sol.converged) return;  // quarantined below

        row.proposed_c = sol.c_star;
        std::vector<double> proposed_rates(mapping.n_ues());
        for (int n = 0; n < mapping.n_ues(); ++n) {
            proposed_rates[n] = achievable_rate(sol.p_star_w, gains, n).rate_bps;
        }
        row.proposed_min_rate_bps = *std::min_element(proposed_rates.begin(), proposed_rates.end());
        row.proposed_jain_rates = jain_index(proposed_rates);
        row.proposed_jain_fractions = jain_index(sol.per_ue_fraction);

        const ReferenceResult ref = reference_full_power(scenario, beam_config, params, budget_w);
        row.reference_min_fraction = ref.min_fraction;
        row.reference_min_rate_bps = ref.min_rate_bps;
        row.reference_jain_rates = jain_index(ref.rates_bps);
        row.reference_jain_fractions = jain_index(ref.fractions);

        row.tdma_fraction_value = tdma_fraction(params.n_ues);
        double min_ifr = std::numeric_limits<double>::infinity();
        std::vector<double> tdma_rates(mapping.n_ues());
        for (int n = 0; n < mapping.n_ues(); ++n) {
            tdma_rates[n] = mapping.ifr[n] * row.tdma_fraction_value;
            min_ifr = std::min(min_ifr, mapping.ifr[n]);
        }
        row.tdma_min_rate_bps = min_ifr * row.tdma_fraction_value;
        row.tdma_jain_rates = jain_index(tdma_rates);
        row.ok = true;
    });

    for (const SweepTrialRow& row : result.rows) {
        if (!row.ok) {
            ++result.failed_trials;
            std::cerr << "sweep: trial " << row.trial << " at " << row.budget_dbm
                      << " dBm did not converge; excluded\n";
        }
    }
    return result;
}

inline const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols = {
        "budget_dbm", "trial",         "scheme",        "min_fraction",
        "min_rate_bps", "min_rate_mbps", "jain_rates",  "jain_fractions"};
    return cols;
}

inline void write_sweep_csv(const SweepResult& result, const std::string& path) {
    CsvWriter csv(path, sweep_columns());
    for (const SweepTrialRow& r : result.rows) {
        if (!r.ok) continue;
        csv.row()
            .add(r.budget_dbm)
            .add(r.trial)
            .add("proposed")
            .add(r.proposed_c)
            .add(r.proposed_min_rate_bps)
            .add(r.proposed_min_rate_bps / 1e6)
            .add(r.proposed_jain_rates)
            .add(r.proposed_jain_fractions);
        csv.row()
            .add(r.budget_dbm)
            .add(r.trial)
            .add("reference")
            .add(r.reference_min_fraction)
            .add(r.reference_min_rate_bps)
            .add(r.reference_min_rate_bps / 1e6)
            .add(r.reference_jain_rates)
            .add(r.reference_jain_fractions);
        csv.row()
            .add(r.budget_dbm)
            .add(r.trial)
            .add("tdma")
            .add(r.tdma_fraction_value)
            .add(r.tdma_min_rate_bps)
            .add(r.tdma_min_rate_bps / 1e6)
            .add(r.tdma_jain_rates)
            .add(1.0);
    }
}

// Mean and 5th/95th percentiles per (budget, scheme, metric); pure function
// of the per-trial rows.
inline void write_sweep_summary_csv(const SweepResult& result,
                                    const std::vector<double>& budgets_dbm, int trials,
                                    const std::string& path) {
    CsvWriter csv(path, {"budget_dbm", "scheme", "metric", "mean", "p05", "p95", "trials_ok"});
    struct SchemeMetric {
        const char* scheme;
        const char* metric;
        double SweepTrialRow::*field;
    };
    static constexpr SchemeMetric kCells[] = {
        {"proposed", "min_fraction", &SweepTrialRow::proposed_c},
        {"proposed", "min_rate_bps", &SweepTrialRow::proposed_min_rate_bps},
        {"proposed", "jain_rates", &SweepTrialRow::proposed_jain_rates},
        {"reference", "min_fraction", &SweepTrialRow::reference_min_fraction},
        {"reference", "min_rate_bps", &SweepTrialRow::reference_min_rate_bps},
        {"reference", "jain_rates", &SweepTrialRow::reference_jain_rates},
        {"tdma", "min_fraction", &SweepTrialRow::tdma_fraction_value},
        {"tdma", "min_rate_bps", &SweepTrialRow::tdma_min_rate_bps},
        {"tdma", "jain_rates", &SweepTrialRow::tdma_jain_rates},
    };
    for (std::size_t b = 0; b < budgets_dbm.size(); ++b) {
        std::vector<const SweepTrialRow*> ok_rows;
        for (int t = 0; t < trials; ++t) {
            const SweepTrialRow& row = result.rows[b * trials + t];
            if (row.ok) ok_rows.push_back(&row);
        }
        if (ok_rows.empty()) continue;
        for (const SchemeMetric& cell : kCells) {
            std::vector<double> values;
            values.reserve(ok_rows.size());
            for (const SweepTrialRow* row : ok_rows) values.push_back(row->*cell.field);
            csv.row()
                .add(budgets_dbm[b])
                .add(cell.scheme)
                .add(cell.metric)
                .add(mean(values))
                .add(percentile(values, 0.05))
                .add(percentile(values, 0.95))
                .add(static_cast<int>(ok_rows.size()));
        }
    }
}

// ---------------------------------------------------------------------------
// Annealing vs brute force on one scenario
// ---------------------------------------------------------------------------

struct CompareSeedRow {
    int chain = 0;
    std::uint64_t chain_seed = 0;
    double sa_best_utility = 0.0;
    double efficiency = 0.0;
    std::uint64_t unique_evaluations = 0;
    int trace_steps = 0;
};

struct CompareResult {
    NetworkScenario scenario;
    BfResult bf;
    std::vector<SaResult> sa_runs;
    std::vector<CompareSeedRow> seeds;
    double median_efficiency = 0.0;
};

inline CompareResult run_sa_vs_bf(const ExperimentSpec& spec) {
    spec.validate();
    CompareResult result;
    result.scenario = generate_scenario(spec.config, spec.seed);
    result.bf = brute_force(result.scenario, spec.config.params, spec.bf_cap, spec.solve);

    result.sa_runs.resize(spec.trials);
    result.seeds.resize(spec.trials);
    parallel_for(spec.trials, [&](std::size_t k) {
        SaParams sa = spec.sa;
        sa.seed = derive_seed(spec.seed, k, "sa-chain");
        result.sa_runs[k] = simulated_annealing(result.scenario, spec.config.params, sa, spec.solve);
        CompareSeedRow& row = result.seeds[k];
        row.chain = static_cast<int>(k);
        row.chain_seed = sa.seed;
        row.sa_best_utility = result.sa_runs[k].best_utility;
        row.efficiency = row.sa_best_utility / result.bf.best_utility;
        row.unique_evaluations = result.sa_runs[k].unique_evaluations;
        row.trace_steps = result.sa_runs[k].trace.evaluations();
    });

    std::vector<double> efficiencies;
    for (const CompareSeedRow& row : result.seeds) efficiencies.push_back(row.efficiency);
    result.median_efficiency = percentile(efficiencies, 0.5);
    return result;
}

inline std::vector<std::string> trace_columns(int n_aps) {
    std::vector<std::string> cols = {"step"};
    for (int m = 1; m <= n_aps; ++m) cols.push_back("width_" + std::to_string(m));
    for (int m = 1; m <= n_aps; ++m) cols.push_back("dir_" + std::to_string(m));
    for (const char* c : {"utility", "delta_u", "accept_prob", "accepted", "temperature"}) {
        cols.push_back(c);
    }
    return cols;
}

inline void write_trace_csv(const SearchTrace& trace, int n_aps, const std::string& path) {
    CsvWriter csv(path, trace_columns(n_aps));
    for (const TraceRecord& rec : trace.records) {
        auto row = csv.row();
        row.add(rec.step);
        for (double w : rec.state.widths_deg) row.add(w);
        for (double d : rec.state.directions_deg) row.add(d);
        row.add(rec.utility).add(rec.delta_u).add(rec.acceptance_prob);
        row.add(rec.accepted ? 1 : 0);
        row.add(rec.temperature);
    }
}

inline void write_bf_surface_csv(const BfResult& bf, const SimParams& params,
                                 const std::string& path) {
    std::vector<std::string> cols = {"index"};
    for (int m = 1; m <= params.n_aps; ++m) cols.push_back("width_" + std::to_string(m));
    for (int m = 1; m <= params.n_aps; ++m) cols.push_back("dir_" + std::to_string(m));
    cols.push_back("utility");
    CsvWriter csv(path, cols);
    for (std::uint64_t i = 0; i < bf.utilities.size(); ++i) {
        const BeamConfig cfg = config_at(params, i);
        auto row = csv.row();
        row.add(i);
        for (double w : cfg.widths_deg) row.add(w);
        for (double d : cfg.directions_deg) row.add(d);
        row.add(bf.utilities[i]);
    }
}

inline void write_compare_summary_csv(const CompareResult& result, const std::string& path) {
    CsvWriter csv(path, {"chain", "chain_seed", "sa_best_utility", "bf_utility", "efficiency",
                         "unique_evaluations", "trace_steps"});
    for (const CompareSeedRow& row : result.seeds) {
        csv.row()
            .add(row.chain)
            .add(row.chain_seed)
            .add(row.sa_best_utility)
            .add(result.bf.best_utility)
            .add(row.efficiency)
            .add(row.unique_evaluations)
            .add(row.trace_steps);
    }
}

// ---------------------------------------------------------------------------
// Experiment JSON (optional; mirrors the CLI flags)
// ---------------------------------------------------------------------------

inline void apply_experiment_json(const nlohmann::json& j, ExperimentSpec& spec) {
    try {
        if (j.contains("mode")) {
            spec.mode = experiment_mode_from_string(j.at("mode").get<std::string>());
        }
        if (j.contains("config")) spec.config = config_from_json(j.at("config"));
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("trials")) spec.trials = j.at("trials").get<int>();
        if (j.contains("budgets_dbm")) {
            spec.budgets_dbm = j.at("budgets_dbm").get<std::vector<double>>();
        }
        if (j.contains("beam_widths_deg") || j.contains("beam_dirs_deg")) {
            BeamConfig cfg;
            cfg.widths_deg = j.at("beam_widths_deg").get<std::vector<double>>();
            cfg.directions_deg = j.at("beam_dirs_deg").get<std::vector<double>>();
            spec.fixed_config = cfg;
        }
        if (j.contains("out_prefix")) spec.out_prefix = j.at("out_prefix").get<std::string>();
        if (j.contains("tol")) spec.solve.tol = j.at("tol").get<double>();
        if (j.contains("max_iter")) spec.solve.max_iter = j.at("max_iter").get<int>();
        if (j.contains("tau_max")) spec.sa.tau_max = j.at("tau_max").get<double>();
        if (j.contains("tau_min")) spec.sa.tau_min = j.at("tau_min").get<double>();
        if (j.contains("i_max")) spec.sa.i_max = j.at("i_max").get<int>();
        if (j.contains("stall_limit")) spec.sa.stall_limit = j.at("stall_limit").get<int>();
        if (j.contains("bf_cap")) spec.bf_cap = j.at("bf_cap").get<std::uint64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("experiment: ") + e.what());
    }
}

inline ExperimentSpec load_experiment(const std::string& path) {
    ExperimentSpec spec;
    apply_experiment_json(load_json_file(path), spec);
    return spec;
}

}  // namespace beamfair
