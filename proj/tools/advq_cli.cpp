#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "advq/bounds.hpp"
#include "advq/csv.hpp"
#include "advq/episode_engine.hpp"
#include "advq/mdp.hpp"
#include "advq/sweep.hpp"

namespace {

void cmd_solve(const std::string& mdp_path) {
    const advq::MdpSpec spec = advq::load_mdp(mdp_path);
    const advq::OptimalSolution sol = advq::solve_optimal(spec);
    std::cout << "S = " << spec.num_states << "\nA = " << spec.num_actions
              << "\nH = " << spec.horizon << "\nv_star_1 =";
    for (int s = 0; s < spec.num_states; ++s)
        std::cout << ' ' << advq::format_double(sol.v_star[s]);
    std::cout << "\ndelta_min = " << advq::format_double(sol.delta_min)
              << "\nqvar_max = " << advq::format_double(sol.qvar_max)
              << "\nd_opt_size = " << sol.d_opt_size << '\n';
}

void cmd_run(const std::string& config_path, const std::string& output_override) {
    advq::ExperimentConfig config = advq::load_config(config_path);
    if (!output_override.empty()) config.output = output_override;
    if (config.output.empty()) config.output = "trace.csv";

    const advq::ExperimentResult result = advq::run_experiment(config);
    advq::save_trace_csv(config.output, result.record);
    std::cout << advq::summary_header() << '\n'
              << advq::summary_row(config, result.record) << '\n'
              << "trace written to " << config.output << '\n';
}

void cmd_sweep(const std::string& config_path, const std::vector<double>& betas,
               const std::vector<std::uint64_t>& seeds, const std::string& outdir) {
    advq::SweepRequest request;
    request.base = advq::load_config(config_path);
    request.betas = betas;
    request.seeds = seeds;
    request.output_dir = outdir;

    const advq::SweepOutcome outcome = advq::run_sweep(request);
    std::cout << outcome.records.size() << " runs complete\nsummary written to "
              << outcome.summary_path << '\n';
}

void cmd_bounds(const std::string& config_path) {
    const advq::ExperimentConfig config = advq::load_config(config_path);
    const advq::MdpSpec spec = advq::make_mdp(config);
    const advq::OptimalSolution sol = advq::solve_optimal(spec);

    advq::BoundInputs inputs;
    inputs.num_states = spec.num_states;
    inputs.num_actions = spec.num_actions;
    inputs.horizon = spec.horizon;
    inputs.total_steps = static_cast<double>(config.episodes) * spec.horizon;
    inputs.beta = config.beta;
    inputs.delta_min = sol.delta_min;
    inputs.qvar_max = sol.qvar_max;
    inputs.d_opt_size = sol.d_opt_size;
    inputs.d_opt_complement = sol.d_opt_complement_size();
    inputs.delta = config.failure_prob;

    std::cout << "shape-only bound values (constants 1, natural logs)\n"
              << "bound_eq1 = "
              << advq::format_double(advq::bound_regret(inputs, advq::RegretBound::kHoeffdingEq1))
              << "\nbound_eq2 = "
              << advq::format_double(
                     advq::bound_regret(inputs, advq::RegretBound::kUcbAdvantageEq2))
              << "\nbound_eq3 = "
              << advq::format_double(advq::bound_regret(inputs, advq::RegretBound::kQesEq3))
              << "\nbound_eq4 = " << advq::format_double(advq::bound_switching(inputs)) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tabular episodic Q-learning lab"};
    app.require_subcommand(1);

    std::string mdp_path;
    CLI::App* solve = app.add_subcommand("solve", "solve an MDP file exactly");
    solve->add_option("mdp", mdp_path, "MDP JSON file")->required();

    std::string run_config, run_output;
    CLI::App* run = app.add_subcommand("run", "run a single experiment");
    run->add_option("config", run_config, "experiment config JSON")->required();
    run->add_option("--output", run_output, "trace CSV path (overrides config)");

    std::string sweep_config, sweep_outdir = "sweep_out";
    std::vector<double> sweep_betas;
    std::vector<std::uint64_t> sweep_seeds;
    CLI::App* sweep = app.add_subcommand("sweep", "run a beta x seed grid");
    sweep->add_option("config", sweep_config, "base config JSON")->required();
    sweep->add_option("--beta", sweep_betas, "beta values")->required();
    sweep->add_option("--seeds", sweep_seeds, "run seeds")->required();
    sweep->add_option("--outdir", sweep_outdir, "output directory");

    std::string bounds_config;
    CLI::App* bounds = app.add_subcommand("bounds", "print bound values for a config");
    bounds->add_option("config", bounds_config, "experiment config JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) cmd_solve(mdp_path);
        if (run->parsed()) cmd_run(run_config, run_output);
        if (sweep->parsed()) cmd_sweep(sweep_config, sweep_betas, sweep_seeds, sweep_outdir);
        if (bounds->parsed()) cmd_bounds(bounds_config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
