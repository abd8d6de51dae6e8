// Command-line front end: scenario generation, single solves, budget sweeps,
// and beam-configuration search (annealing and brute force).

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "beamfair/beamfair.hpp"

namespace {

using nlohmann::json;

struct CliState {
    std::string config_path = "default_scenario.json";
    std::string scenario_path;
    std::string experiment_path;
    std::uint64_t seed = 1;
    int trials = 0;
    std::vector<double> budgets_dbm;
    std::vector<double> beam_widths;
    std::vector<double> beam_dirs;
    std::string out_prefix;
    double tol = 0.0;
    int max_iter = 0;
    double tau_max = 0.0;
    double tau_min = 0.0;
    int i_max = 0;
    int stall_limit = 0;
    std::uint64_t bf_cap = 0;
};

struct CliOptions {
    CLI::Option* trials = nullptr;
    CLI::Option* budgets = nullptr;
    CLI::Option* widths = nullptr;
    CLI::Option* dirs = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* tol = nullptr;
    CLI::Option* max_iter = nullptr;
    CLI::Option* tau_max = nullptr;
    CLI::Option* tau_min = nullptr;
    CLI::Option* i_max = nullptr;
    CLI::Option* stall_limit = nullptr;
    CLI::Option* bf_cap = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* config = nullptr;
    CLI::Option* experiment = nullptr;
};

CliOptions add_common_options(CLI::App* cmd, CliState& st, bool with_search) {
    CliOptions opt;
    opt.config = cmd->add_option("--config", st.config_path, "Scenario configuration JSON");
    opt.seed = cmd->add_option("--seed", st.seed, "Base RNG seed");
    opt.trials = cmd->add_option("--trials", st.trials, "Trial / chain count");
    opt.budgets =
        cmd->add_option("--budget-dbm", st.budgets_dbm, "Power budget(s) in dBm")->delimiter(',');
    opt.widths =
        cmd->add_option("--beam-widths", st.beam_widths, "Receive beam widths, one per AP")
            ->delimiter(',');
    opt.dirs = cmd->add_option("--beam-dirs", st.beam_dirs, "Receive beam directions, one per AP")
                   ->delimiter(',');
    opt.out = cmd->add_option("--out", st.out_prefix, "Output path prefix");
    opt.tol = cmd->add_option("--tol", st.tol, "Fixed-point tolerance relative to the budget");
    opt.max_iter = cmd->add_option("--max-iter", st.max_iter, "Fixed-point iteration cap");
    opt.experiment =
        cmd->add_option("--experiment", st.experiment_path, "Experiment spec JSON (flags override)");
    if (with_search) {
        opt.tau_max = cmd->add_option("--tau-max", st.tau_max, "Initial temperature");
        opt.tau_min = cmd->add_option("--tau-min", st.tau_min, "Final temperature");
        opt.i_max = cmd->add_option("--i-max", st.i_max, "Inner iterations per temperature");
        opt.stall_limit = cmd->add_option("--stall-limit", st.stall_limit,
                                          "Temperatures without improvement before stopping");
        opt.bf_cap = cmd->add_option("--bf-cap", st.bf_cap, "Brute-force evaluation cap");
    }
    return opt;
}

beamfair::ExperimentSpec build_spec(const CliState& st, const CliOptions& opt,
                                    beamfair::ExperimentMode mode, bool config_needed = true) {
    beamfair::ExperimentSpec spec;
    spec.mode = mode;
    if (opt.experiment->count() > 0) {
        beamfair::apply_experiment_json(beamfair::load_json_file(st.experiment_path), spec);
        if (spec.mode != mode) {
            throw beamfair::ValidationError("experiment file is for mode '" +
                                            beamfair::to_string(spec.mode) +
                                            "', not this subcommand");
        }
    }
    if (opt.config->count() > 0 || (config_needed && opt.experiment->count() == 0)) {
        spec.config = beamfair::load_config(st.config_path);
    }
    if (opt.seed->count() > 0) spec.seed = st.seed;
    if (opt.trials->count() > 0) spec.trials = st.trials;
    if (opt.budgets->count() > 0) spec.budgets_dbm = st.budgets_dbm;
    if (opt.widths->count() > 0 || opt.dirs->count() > 0) {
        spec.fixed_config = beamfair::BeamConfig{st.beam_widths, st.beam_dirs};
    }
    if (opt.out->count() > 0) spec.out_prefix = st.out_prefix;
    if (opt.tol->count() > 0) spec.solve.tol = st.tol;
    if (opt.max_iter->count() > 0) spec.solve.max_iter = st.max_iter;
    if (opt.tau_max && opt.tau_max->count() > 0) spec.sa.tau_max = st.tau_max;
    if (opt.tau_min && opt.tau_min->count() > 0) spec.sa.tau_min = st.tau_min;
    if (opt.i_max && opt.i_max->count() > 0) spec.sa.i_max = st.i_max;
    if (opt.stall_limit && opt.stall_limit->count() > 0) spec.sa.stall_limit = st.stall_limit;
    if (opt.bf_cap && opt.bf_cap->count() > 0) spec.bf_cap = st.bf_cap;
    return spec;
}

// Single budget for solve/sa/bf/compare: flag value if given, else the config's.
double single_budget_dbm(const beamfair::ExperimentSpec& spec, const CliOptions& opt,
                         const CliState& st) {
    if (opt.budgets->count() > 0) {
        if (st.budgets_dbm.size() != 1) {
            throw beamfair::ValidationError("this command takes exactly one --budget-dbm value");
        }
        return st.budgets_dbm[0];
    }
    return spec.config.params.power_budget_dbm;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_generate(const beamfair::ExperimentSpec& spec) {
    const beamfair::NetworkScenario scenario =
        beamfair::generate_scenario(spec.config, spec.seed);
    const json j = beamfair::scenario_to_json(scenario, spec.config);
    if (!spec.out_prefix.empty()) {
        const std::string path = spec.out_prefix + "scenario.json";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw beamfair::IoError("cannot open output file: " + path);
        out << j.dump(2) << "\n";
        emit(json{{"scenario_json", path}, {"seed", spec.seed}});
    } else {
        emit(j);
    }
    return 0;
}

int cmd_solve(beamfair::ExperimentSpec spec, const CliState& st, const CliOptions& opt) {
    beamfair::NetworkScenario scenario;
    if (!st.scenario_path.empty()) {
        beamfair::ScenarioFile file = beamfair::load_scenario(st.scenario_path);
        spec.config = file.config;
        scenario = file.scenario;
    } else {
        scenario = beamfair::generate_scenario(spec.config, spec.seed);
    }
    const beamfair::BeamConfig beam_config = spec.resolve_fixed_config();
    const double budget_w = beamfair::dbm_to_watts(single_budget_dbm(spec, opt, st));
    const beamfair::PowerSolution sol = beamfair::solve_for_config(
        scenario, beam_config, spec.config.params, budget_w, spec.solve);
    json j = sol;
    j["beam_config"] = beam_config;
    j["seed"] = scenario.seed;
    emit(j);
    return sol.converged ? 0 : 2;
}

int cmd_sweep(const beamfair::ExperimentSpec& spec) {
    spec.validate();
    const beamfair::SweepResult result = beamfair::run_power_sweep(spec);
    const std::string sweep_path = spec.out_prefix + "sweep.csv";
    const std::string summary_path = spec.out_prefix + "summary.csv";
    beamfair::write_sweep_csv(result, sweep_path);
    beamfair::write_sweep_summary_csv(result, spec.budgets_dbm, spec.trials, summary_path);
    emit(json{{"sweep_csv", sweep_path},
              {"summary_csv", summary_path},
              {"trials", spec.trials},
              {"budgets", spec.budgets_dbm.size()},
              {"failed_trials", result.failed_trials}});
    return 0;
}

int cmd_sa(beamfair::ExperimentSpec spec, const CliState& st, const CliOptions& opt) {
    spec.config.params.power_budget_dbm = single_budget_dbm(spec, opt, st);
    const beamfair::NetworkScenario scenario =
        beamfair::generate_scenario(spec.config, spec.seed);
    beamfair::SaParams sa = spec.sa;
    sa.seed = beamfair::derive_seed(spec.seed, 0, "sa-chain");
    const beamfair::SaResult result =
        beamfair::simulated_annealing(scenario, spec.config.params, sa, spec.solve);
    const std::string trace_path =
        spec.out_prefix + "sa_trace_" + std::to_string(spec.seed) + ".csv";
    beamfair::write_trace_csv(result.trace, spec.config.params.n_aps, trace_path);
    json j{{"best_config", result.best_config},
           {"best_utility", result.best_utility},
           {"solution", result.solution},
           {"unique_evaluations", result.unique_evaluations},
           {"trace_steps", result.trace.evaluations()},
           {"trace_csv", trace_path}};
    emit(j);
    return result.solution.converged ? 0 : 2;
}

int cmd_bf(beamfair::ExperimentSpec spec, const CliState& st, const CliOptions& opt) {
    spec.config.params.power_budget_dbm = single_budget_dbm(spec, opt, st);
    const beamfair::NetworkScenario scenario =
        beamfair::generate_scenario(spec.config, spec.seed);
    const auto start = std::chrono::steady_clock::now();
    const beamfair::BfResult result =
        beamfair::brute_force(scenario, spec.config.params, spec.bf_cap, spec.solve);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "bf: " << result.utilities.size() << " configurations in " << elapsed.count()
              << " s\n";
    const std::string surface_path = spec.out_prefix + "bf_surface.csv";
    beamfair::write_bf_surface_csv(result, spec.config.params, surface_path);
    json j{{"best_config", result.best_config},
           {"best_utility", result.best_utility},
           {"best_index", result.best_index},
           {"solution", result.solution},
           {"bf_surface_csv", surface_path}};
    emit(j);
    return result.solution.converged ? 0 : 2;
}

int cmd_compare(beamfair::ExperimentSpec spec, const CliState& st, const CliOptions& opt) {
    spec.config.params.power_budget_dbm = single_budget_dbm(spec, opt, st);
    if (opt.trials->count() == 0) spec.trials = 20;
    const auto start = std::chrono::steady_clock::now();
    const beamfair::CompareResult result = beamfair::run_sa_vs_bf(spec);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "compare: brute force + " << spec.trials << " chains in " << elapsed.count()
              << " s\n";

    const std::string surface_path = spec.out_prefix + "bf_surface.csv";
    beamfair::write_bf_surface_csv(result.bf, spec.config.params, surface_path);
    const std::string summary_path = spec.out_prefix + "summary.csv";
    beamfair::write_compare_summary_csv(result, summary_path);
    for (std::size_t k = 0; k < result.sa_runs.size(); ++k) {
        beamfair::write_trace_csv(result.sa_runs[k].trace, spec.config.params.n_aps,
                                  spec.out_prefix + "sa_trace_" + std::to_string(k) + ".csv");
    }
    emit(json{{"bf_utility", result.bf.best_utility},
              {"bf_config", result.bf.best_config},
              {"median_efficiency", result.median_efficiency},
              {"chains", spec.trials},
              {"summary_csv", summary_path},
              {"bf_surface_csv", surface_path}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uplink hotspot power and receive-beam optimizer"};
    app.require_subcommand(1);

    CliState st;
    CLI::App* generate = app.add_subcommand("generate", "Generate a scenario and dump it as JSON");
    CLI::App* solve = app.add_subcommand("solve", "Solve the rate allocation for one configuration");
    CLI::App* sweep = app.add_subcommand("sweep", "Monte Carlo power sweep against the baselines");
    CLI::App* sa = app.add_subcommand("sa", "Simulated-annealing beam search");
    CLI::App* bf = app.add_subcommand("bf", "Exhaustive beam search");
    CLI::App* compare = app.add_subcommand("compare", "Annealing efficiency vs brute force");

    CliOptions gen_opt = add_common_options(generate, st, false);
    CliOptions solve_opt = add_common_options(solve, st, false);
    solve->add_option("--scenario", st.scenario_path, "Replay a scenario JSON instead of generating");
    CliOptions sweep_opt = add_common_options(sweep, st, false);
    CliOptions sa_opt = add_common_options(sa, st, true);
    CliOptions bf_opt = add_common_options(bf, st, true);
    CliOptions compare_opt = add_common_options(compare, st, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        using beamfair::ExperimentMode;
        if (generate->parsed()) {
            return cmd_generate(build_spec(st, gen_opt, ExperimentMode::solve));
        }
        if (solve->parsed()) {
            // a scenario file carries its own config
            const bool config_needed = st.scenario_path.empty();
            return cmd_solve(build_spec(st, solve_opt, ExperimentMode::solve, config_needed), st,
                             solve_opt);
        }
        if (sweep->parsed()) return cmd_sweep(build_spec(st, sweep_opt, ExperimentMode::sweep));
        if (sa->parsed()) return cmd_sa(build_spec(st, sa_opt, ExperimentMode::sa), st, sa_opt);
        if (bf->parsed()) return cmd_bf(build_spec(st, bf_opt, ExperimentMode::bf), st, bf_opt);
        if (compare->parsed()) {
            return cmd_compare(build_spec(st, compare_opt, ExperimentMode::compare), st,
                               compare_opt);
        }
    } catch (const beamfair::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const beamfair::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << " (iterations=" << e.iterations
                  << ", residual=" << e.residual << ")\n";
        return 2;
    } catch (const beamfair::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
